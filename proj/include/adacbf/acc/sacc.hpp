#pragma once

#include <memory>

#include "adacbf/barrier/adacbf.hpp"
#include "adacbf/sim/simulate.hpp"

namespace adacbf {

// Double integrator x' = v, v' = u following a lead vehicle at constant
// speed; state (x, v, x_p). Linear class-K on both levels.
struct SaccParams {
    double v0 = 20.0;
    double gap0 = 100.0;
    double v_lead = 13.89;
    double delta0 = 10.0;
    double u_min = -2.0;
    double u_max = 2.0;
    double p1_0 = 0.1;
    double p1_star = 0.1;
    double p2_star = 1.0;
    double eps = 10.0;
    double W1 = 2.0;
    double P1 = 1e4;
    double Q = 1e4;
    double T = 30.0;
    double dt = 0.1;
};

AffineControlSystem sacc_system(const SaccParams& p);
ScalarFunction sacc_barrier(const SaccParams& p);
AdaCbfSpec sacc_adacbf_spec(const SaccParams& p);

struct SaccProblem {
    std::shared_ptr<const AdaCbf> safety;
    ClosedLoopProblem problem;
};

// Minimize u^2 plus the penalty terms subject to the AdaCBF rows and the
// input box.
SaccProblem build_sacc_problem(const SaccParams& p);

}  // namespace adacbf
