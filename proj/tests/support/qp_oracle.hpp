#pragma once

#include <optional>
#include <random>

#include "adacbf/qp/qp.hpp"

namespace adacbf::testing {

// Exhaustive active-set enumeration for strictly convex QPs: every subset of
// linearly independent rows is solved as an equality problem; the best
// primal-feasible candidate is the optimum. nullopt when none is feasible.
struct OracleResult {
    Vector w;
    double objective = 0.0;
};
std::optional<OracleResult> brute_force_qp(const QpProblem& p, double feas_tol = 1e-9);

// Random strictly convex instance with d variables and r rows. Feasible
// instances are built around a known interior-or-boundary point.
QpProblem random_qp(std::mt19937_64& rng, std::size_t d, std::size_t r, bool feasible);

}  // namespace adacbf::testing
