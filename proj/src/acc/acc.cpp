#include "adacbf/acc/acc.hpp"

#include <algorithm>
#include <cmath>

#include "adacbf/numerics/errors.hpp"

namespace adacbf {

CdSchedule CdSchedule::constant(double v) {
    CdSchedule s;
    s.kind = Kind::constant;
    s.value = v;
    return s;
}

CdSchedule CdSchedule::ramp(double start, double end, double duration) {
    CdSchedule s;
    s.kind = Kind::ramp;
    s.start = start;
    s.end = end;
    s.ramp_duration = duration;
    return s;
}

double CdSchedule::at(double t, std::optional<double> activation_time) const {
    if (kind == Kind::constant) return value;
    if (!activation_time) return start;
    const double frac = std::clamp((t - *activation_time) / ramp_duration, 0.0, 1.0);
    return start + (end - start) * frac;
}

void CdSchedule::validate() const {
    auto in_range = [](double c) { return c > 0.0 && c <= 1.0; };
    if (kind == Kind::constant) {
        if (!in_range(value)) throw ConfigError("c_d must lie in (0, 1]");
    } else {
        if (!in_range(start) || !in_range(end)) throw ConfigError("c_d ramp endpoints must lie in (0, 1]");
        if (!(ramp_duration > 0.0)) throw ConfigError("c_d ramp duration must be > 0");
    }
}

void AccParams::validate() const {
    for (double v : {M, g, f0, f1, f2, delta0, dt, eps, c_a, p_acc, W1, P1, Q, p1_0, p1_star, p2_star, T})
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("ACC parameters must be finite and > 0");
    if (!(v_min < v_max)) throw ConfigError("ACC needs v_min < v_max");
    if (c_a > 1.0) throw ConfigError("c_a must lie in (0, 1]");
    if (!(T >= dt)) throw ConfigError("ACC horizon T must be >= dt");
    cd.validate();
}

double resistance(const AccParams& p, double v) { return resistance(p, Dual(v)).real(); }

Dual resistance(const AccParams& p, const Dual& v) { return p.f0 * sgn(v) + p.f1 * v + p.f2 * v * v; }

const char* to_string(AccMode m) { return m == AccMode::adacbf ? "adacbf" : "hocbf-baseline"; }

AccMode parse_acc_mode(const std::string& s) {
    if (s == "adacbf") return AccMode::adacbf;
    if (s == "hocbf-baseline") return AccMode::hocbf_baseline;
    throw ConfigError("unknown mode '" + s + "' (expected adacbf or hocbf-baseline)");
}

AffineControlSystem acc_system(const AccParams& p) {
    VectorFunction f(3, 3, [p](DualSpan x) {
        return DualVec{x[1], -resistance(p, x[1]) / p.M, Dual(p.v_lead)};
    });
    MatrixFunction g(3, 3, 1, [p](DualSpan) { return DualVec{Dual(0.0), Dual(1.0 / p.M), Dual(0.0)}; });
    return AffineControlSystem(3, 1, std::move(f), std::move(g));
}

ScalarFunction acc_barrier(const AccParams& p) {
    return ScalarFunction(3, [d0 = p.delta0](DualSpan x) { return x[2] - x[0] - d0; });
}

AdaCbfSpec acc_adacbf_spec(const AccParams& p, bool freeze_p2) {
    AdaCbfSpec s;
    s.barrier = acc_barrier(p);
    s.m = 2;
    s.alphas = {ClassK::quadratic(), ClassK::linear()};
    PenaltyLevelSpec l;
    l.adaptive = true;
    l.initial = p.p1_0;
    l.target = p.p1_star;
    l.clf_rate = p.eps;
    l.W = p.W1;
    l.P = p.P1;
    s.levels = {l};
    s.top.adaptive = !freeze_p2;
    s.top.value = p.p2_star;
    s.top.target = p.p2_star;
    s.top.Q = p.Q;
    s.label = "adacbf";
    return s;
}

AdaCbfSpec acc_baseline_spec(const AccParams& p) {
    AdaCbfSpec s = acc_adacbf_spec(p, true);
    s.levels[0].adaptive = false;
    s.levels[0].initial = p.p1_0;
    s.label = "hocbf";
    return s;
}

namespace {

ClfSpec speed_clf(const AccParams& p) {
    return ClfSpec{ScalarFunction(3, [vd = p.v_des](DualSpan x) { return square(x[1] - vd); }), p.eps, p.p_acc,
                   "speed_clf"};
}

HocbfSpec vmax_spec(const AccParams& p) {
    return HocbfSpec{ScalarFunction(3, [vm = p.v_max](DualSpan x) { return vm - x[1]; }), 1, {ClassK::linear()}, {},
                     "v_max"};
}

HocbfSpec vmin_spec(const AccParams& p) {
    return HocbfSpec{ScalarFunction(3, [vm = p.v_min](DualSpan x) { return x[1] - vm; }), 1, {ClassK::linear()}, {},
                     "v_min"};
}

}  // namespace

AccProblem build_acc_problem(const AccParams& params, AccMode mode, bool freeze_p2) {
    params.validate();
    AccProblem out{params, mode, freeze_p2, nullptr,
                   ClosedLoopProblem{augment(acc_system(params), {}), DecisionLayout(1, 1, 0, false), {}, {}, {}, {}, {}, {}},
                   0, 1, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    const AffineControlSystem base = acc_system(params);
    const AdaCbfSpec spec = mode == AccMode::adacbf ? acc_adacbf_spec(params, freeze_p2) : acc_baseline_spec(params);
    if (mode == AccMode::hocbf_baseline) out.freeze_p2 = true;
    AugmentedSystem aug = augment(base, chain_lengths(spec));
    auto safety = std::make_shared<const AdaCbf>(spec, aug);
    const DecisionLayout layout = adacbf_layout(spec, 1, 1);
    out.safety = safety;
    out.idx_u = layout.u(0);
    out.idx_delta_acc = layout.slack(0);
    if (layout.adaptive_levels() > 0) {
        out.idx_nu1 = layout.nu(0);
        out.idx_delta1 = layout.delta(0);
        out.idx_p1_state = aug.chain_head(0);
    }
    if (layout.has_top()) out.idx_p2 = layout.top();

    const Vector x0{0.0, params.v0, params.gap0};
    validate_relative_degree(spec.barrier, base.drift(), base.input_matrix(), spec.m, x0);

    const ClfSpec clf = speed_clf(params);
    const HocbfSpec vmax = vmax_spec(params);
    const HocbfSpec vmin = vmin_spec(params);

    ClosedLoopProblem& cl = out.problem;
    cl.system = aug;
    cl.layout = layout;
    cl.rows = [=](const StepContext& ctx) {
        const Vector x = aug.base_state(ctx.z);
        std::vector<ConstraintRow> rows;
        rows.push_back(clf_row(clf, base, x, layout, layout.slack(0)));
        rows.push_back(hocbf_row(vmax, base, x, layout));
        rows.push_back(hocbf_row(vmin, base, x, layout));
        rows.push_back(safety->adacbf_row(ctx.z, layout));
        for (auto& r : safety->penalty_hocbf_rows(ctx.z, layout)) rows.push_back(std::move(r));
        for (auto& r : safety->penalty_clf_rows(ctx.z, layout)) rows.push_back(std::move(r));
        if (auto r = safety->top_penalty_row(layout)) rows.push_back(std::move(*r));
        return rows;
    };
    cl.cost = [=](const StepContext& ctx) {
        QuadraticCost c(layout.dim());
        const double fr = resistance(params, ctx.z[1]);
        const double m2 = params.M * params.M;
        c.H(layout.u(0), layout.u(0)) = 2.0 / m2;
        c.F[layout.u(0)] = -2.0 * fr / m2;
        c.H(layout.slack(0), layout.slack(0)) = 2.0 * params.p_acc;
        safety->add_penalty_cost(c, layout);
        return c;
    };
    const double mg = params.M * params.g;
    const CdSchedule cd = params.cd;
    const double ca = params.c_a;
    cl.bounds = InputBounds(
        1, [cd, mg](const BoundContext& b) { return Vector{-cd.at(b.t, b.activation_time) * mg}; },
        [ca, mg](const BoundContext&) { return Vector{ca * mg}; });
    cl.diagnostics = [safety](const Vector& z) { return safety->psi_cascade(z); };
    cl.activation_label = spec.label;
    cl.initial_state = initial_augmented_state(spec, aug, x0);
    return out;
}

double AccProblem::p1_of(const StepRecord& r) const { return idx_p1_state ? r.z[*idx_p1_state] : params.p1_0; }

double AccProblem::p2_of(const StepRecord& r) const { return idx_p2 ? r.w[*idx_p2] : params.p2_star; }

double AccProblem::nu1_of(const StepRecord& r) const { return idx_nu1 ? r.w[*idx_nu1] : 0.0; }

double AccProblem::delta1_of(const StepRecord& r) const { return idx_delta1 ? r.w[*idx_delta1] : 0.0; }

double AccProblem::cd_of(const StepRecord& r) const {
    return r.u_lower.empty() ? NAN : -r.u_lower[0] / (params.M * params.g);
}

}  // namespace adacbf
