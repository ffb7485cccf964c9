#pragma once

#include <memory>
#include <optional>
#include <string>

#include "adacbf/barrier/adacbf.hpp"
#include "adacbf/barrier/hocbf.hpp"
#include "adacbf/sim/simulate.hpp"

namespace adacbf {

// Braking coefficient c_d(t): constant, or a linear ramp from start to end
// over ramp_duration seconds that begins once the safety row first activates.
struct CdSchedule {
    enum class Kind { constant, ramp };
    Kind kind = Kind::constant;
    double value = 0.4;
    double start = 0.37;
    double end = 0.2;
    double ramp_duration = 10.0;

    static CdSchedule constant(double v);
    static CdSchedule ramp(double start, double end, double duration = 10.0);
    double at(double t, std::optional<double> activation_time) const;
    void validate() const;
};

struct AccParams {
    double v0 = 20.0;          // ego initial speed
    double gap0 = 100.0;       // x_p(0) - x(0)
    double v_lead = 13.89;
    double v_des = 24.0;
    double M = 1650.0;
    double g = 9.81;
    double f0 = 0.1;
    double f1 = 5.0;
    double f2 = 0.25;
    double delta0 = 10.0;
    double v_max = 30.0;
    double v_min = 0.0;
    double dt = 0.1;
    double eps = 10.0;
    double c_a = 0.4;
    double p_acc = 1.0;
    double W1 = 2.0;
    double P1 = 1e12;
    double Q = 1e12;
    double p1_0 = 0.1;
    double p1_star = 0.1;
    double p2_star = 1.0;
    double T = 30.0;
    CdSchedule cd;

    void validate() const;
};

double resistance(const AccParams& p, double v);
Dual resistance(const AccParams& p, const Dual& v);

enum class AccMode { adacbf, hocbf_baseline };
const char* to_string(AccMode m);
AccMode parse_acc_mode(const std::string& s);

// Base state x = (x, v, x_p), input u (wheel force).
AffineControlSystem acc_system(const AccParams& p);
// b(x) = x_p - x - delta0
ScalarFunction acc_barrier(const AccParams& p);
// alpha_1 quadratic, alpha_2 linear; p1 adaptive on a chain of length one,
// p2 a decision variable unless frozen.
AdaCbfSpec acc_adacbf_spec(const AccParams& p, bool freeze_p2);
// Same cascade with p1 = p1_0 and p2 = p2_star frozen.
AdaCbfSpec acc_baseline_spec(const AccParams& p);

struct AccProblem {
    AccParams params;
    AccMode mode = AccMode::adacbf;
    bool freeze_p2 = false;
    std::shared_ptr<const AdaCbf> safety;
    ClosedLoopProblem problem;

    // Decision-vector slots; missing ones are frozen or absent in this mode.
    std::size_t idx_u = 0;
    std::size_t idx_delta_acc = 1;
    std::optional<std::size_t> idx_nu1;
    std::optional<std::size_t> idx_delta1;
    std::optional<std::size_t> idx_p2;
    std::optional<std::size_t> idx_p1_state;  // in z

    double p1_of(const StepRecord& r) const;
    double p2_of(const StepRecord& r) const;
    double nu1_of(const StepRecord& r) const;
    double delta1_of(const StepRecord& r) const;
    double cd_of(const StepRecord& r) const;
};

AccProblem build_acc_problem(const AccParams& params, AccMode mode, bool freeze_p2 = false);

}  // namespace adacbf
