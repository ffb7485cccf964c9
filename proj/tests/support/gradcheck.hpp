#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "adacbf/barrier/adacbf.hpp"

namespace adacbf::testing {

// Norm-wise relative error ||g - fd||_inf / ||g||_inf between the dual
// gradient and a central difference with step h * max(1, |z_i|).
double gradient_rel_error(const ScalarFunction& f, const Vector& z, double h = 1e-5);

// psi functions of several cascades with a sampler of states inside a
// region where they are smooth.
struct GradCase {
    std::string name;
    ScalarFunction f;
    std::function<Vector(std::mt19937_64&)> sample;
};
std::vector<GradCase> cascade_gradient_cases();

// Third-order example: x1''' = -sin(x1) + u with b = 1 - x1^2/4 - 0.1 cos(x1),
// both intermediate penalties adaptive (chains of length 2 and 1).
AdaCbfSpec third_order_spec();
AffineControlSystem third_order_system();

}  // namespace adacbf::testing
