#include "adacbf/acc/sacc.hpp"

namespace adacbf {

AffineControlSystem sacc_system(const SaccParams& p) {
    VectorFunction f(3, 3, [vl = p.v_lead](DualSpan x) { return DualVec{x[1], Dual(0.0), Dual(vl)}; });
    MatrixFunction g(3, 3, 1, [](DualSpan) { return DualVec{Dual(0.0), Dual(1.0), Dual(0.0)}; });
    return AffineControlSystem(3, 1, std::move(f), std::move(g));
}

ScalarFunction sacc_barrier(const SaccParams& p) {
    return ScalarFunction(3, [d0 = p.delta0](DualSpan x) { return x[2] - x[0] - d0; });
}

AdaCbfSpec sacc_adacbf_spec(const SaccParams& p) {
    AdaCbfSpec s;
    s.barrier = sacc_barrier(p);
    s.m = 2;
    s.alphas = {ClassK::linear(), ClassK::linear()};
    PenaltyLevelSpec l;
    l.adaptive = true;
    l.initial = p.p1_0;
    l.target = p.p1_star;
    l.clf_rate = p.eps;
    l.W = p.W1;
    l.P = p.P1;
    s.levels = {l};
    s.top.adaptive = true;
    s.top.target = p.p2_star;
    s.top.Q = p.Q;
    s.label = "adacbf";
    return s;
}

SaccProblem build_sacc_problem(const SaccParams& p) {
    const AdaCbfSpec spec = sacc_adacbf_spec(p);
    AugmentedSystem aug = augment(sacc_system(p), chain_lengths(spec));
    auto safety = std::make_shared<const AdaCbf>(spec, aug);
    const DecisionLayout layout = adacbf_layout(spec, 1, 0);
    ClosedLoopProblem cl{aug, layout, {}, {}, InputBounds::constant(Vector{p.u_min}, Vector{p.u_max}), {}, spec.label,
                         {}};
    cl.rows = [safety, layout](const StepContext& ctx) {
        std::vector<ConstraintRow> rows;
        rows.push_back(safety->adacbf_row(ctx.z, layout));
        for (auto& r : safety->penalty_hocbf_rows(ctx.z, layout)) rows.push_back(std::move(r));
        for (auto& r : safety->penalty_clf_rows(ctx.z, layout)) rows.push_back(std::move(r));
        if (auto r = safety->top_penalty_row(layout)) rows.push_back(std::move(*r));
        return rows;
    };
    cl.cost = [safety, layout](const StepContext&) {
        QuadraticCost c(layout.dim());
        c.H(layout.u(0), layout.u(0)) = 2.0;
        safety->add_penalty_cost(c, layout);
        return c;
    };
    cl.diagnostics = [safety](const Vector& z) { return safety->psi_cascade(z); };
    cl.initial_state = initial_augmented_state(spec, aug, Vector{0.0, p.v0, p.gap0});
    return {safety, cl};
}

}  // namespace adacbf
