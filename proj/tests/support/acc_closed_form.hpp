#pragma once

#include <vector>

#include "adacbf/acc/acc.hpp"

namespace adacbf::testing {

// Hand-derived ACC rows over w = (u, delta_acc, nu1, delta1, p2) at
// z = (x, v, x_p, p1). Same order, sense and sign convention as the engine.
std::vector<ConstraintRow> acc_rows_closed_form(const AccParams& p, const Vector& z);
QuadraticCost acc_cost_closed_form(const AccParams& p, const Vector& z);
// psi_0, psi_1
std::vector<double> acc_psi_closed_form(const AccParams& p, const Vector& z);

}  // namespace adacbf::testing
