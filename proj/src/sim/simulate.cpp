#include "adacbf/sim/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "adacbf/numerics/errors.hpp"
#include "adacbf/sim/integrate.hpp"

namespace adacbf {

const char* to_string(InfeasiblePolicy p) {
    switch (p) {
        case InfeasiblePolicy::halt:
            return "halt";
        case InfeasiblePolicy::hold_last_control:
            return "hold-last-control";
        case InfeasiblePolicy::clamp_to_bounds:
            return "clamp-to-bounds";
    }
    return "unknown";
}

InfeasiblePolicy parse_infeasible_policy(const std::string& s) {
    if (s == "halt") return InfeasiblePolicy::halt;
    if (s == "hold-last-control") return InfeasiblePolicy::hold_last_control;
    if (s == "clamp-to-bounds") return InfeasiblePolicy::clamp_to_bounds;
    throw ConfigError("unknown infeasible policy '" + s + "'");
}

QpProblem assemble_qp(const QuadraticCost& cost, const std::vector<ConstraintRow>& rows) {
    const std::size_t d = cost.F.size();
    QpProblem p;
    p.H = cost.H;
    p.F = cost.F;
    p.A = Matrix(rows.size(), d);
    p.b = Vector(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require_dims(rows[i].coefficients.size() == d, "row '" + rows[i].label + "' has wrong decision size");
        rows[i].as_leq(p.A.row(i), p.b[i]);
    }
    return p;
}

std::vector<ConstraintRow> input_bound_rows(const DecisionLayout& layout, const Vector& lower, const Vector& upper) {
    std::vector<ConstraintRow> rows;
    const std::size_t q = lower.size();
    for (std::size_t j = 0; j < q; ++j) {
        const std::string suffix = q == 1 ? "" : std::to_string(j);
        ConstraintRow hi;
        hi.label = "u_max" + suffix;
        hi.sense = Sense::leq;
        hi.coefficients.assign(layout.dim(), 0.0);
        hi.coefficients[layout.u(j)] = 1.0;
        hi.constant = -upper[j];
        rows.push_back(hi);
        ConstraintRow lo;
        lo.label = "u_min" + suffix;
        lo.sense = Sense::geq;
        lo.coefficients.assign(layout.dim(), 0.0);
        lo.coefficients[layout.u(j)] = 1.0;
        lo.constant = -lower[j];
        rows.push_back(lo);
    }
    return rows;
}

Trajectory run(const ClosedLoopProblem& problem, const SimOptions& o) {
    if (!(o.dt > 0.0)) throw ConfigError("dt must be > 0");
    if (!(o.T >= o.dt)) throw ConfigError("horizon T must be >= dt");
    const AugmentedSystem& sys = problem.system;
    const DecisionLayout& layout = problem.layout;
    require_dims(problem.initial_state.size() == sys.n(), "initial state size mismatch");
    require_dims(layout.q() == sys.base().q(), "layout input size mismatch");

    Vector z = problem.initial_state;
    for (double v : problem.diagnostics(z))
        if (v < 0.0) throw InitialConditionError("initial state lies outside the safe cascade sets");

    const auto n_steps = static_cast<std::size_t>(std::llround(o.T / o.dt));
    const bool noisy = o.noise.active();
    if (noisy) require_dims(o.noise.amplitude().size() == sys.base().n(), "noise channels must match base state");
    const std::size_t segments = noisy ? std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(o.dt / o.noise.hold()))) : 1;
    const int seg_substeps = noisy ? std::max(1, static_cast<int>(std::ceil(static_cast<double>(o.substeps) / segments))) : o.substeps;

    Trajectory traj;
    traj.steps.reserve(n_steps);
    Vector last_w(layout.dim(), 0.0);

    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * o.dt;
        const StepContext ctx{t, z, traj.activation_time};
        const BoundContext bctx{t, traj.activation_time};

        std::vector<ConstraintRow> rows = problem.rows(ctx);
        Vector lo, hi;
        if (!problem.bounds.empty()) {
            lo = problem.bounds.lower(bctx);
            hi = problem.bounds.upper(bctx);
            for (auto& r : input_bound_rows(layout, lo, hi)) rows.push_back(std::move(r));
        }
        if (traj.row_labels.empty())
            for (const auto& r : rows) traj.row_labels.push_back(r.label);

        const QpProblem qp = assemble_qp(problem.cost(ctx), rows);
        const auto t0 = std::chrono::steady_clock::now();
        const QpSolution sol = solve(qp, o.qp);
        const auto t1 = std::chrono::steady_clock::now();

        StepRecord rec;
        rec.t = t;
        rec.z = z;
        rec.psi = problem.diagnostics(z);
        rec.u_lower = lo;
        rec.u_upper = hi;
        rec.status = sol.status;
        rec.feasible = sol.status == QpStatus::optimal;
        rec.solve_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rec.qp_iterations = sol.iterations;

        if (rec.feasible) {
            rec.w = sol.w;
            if (!traj.activation_time && !problem.activation_label.empty()) {
                for (std::size_t i = 0; i < rows.size(); ++i)
                    if (rows[i].label == problem.activation_label && sol.multipliers[i] > o.activation_tol)
                        traj.activation_time = t;
            }
        } else {
            rec.w = last_w;
            if (o.policy == InfeasiblePolicy::clamp_to_bounds && !lo.empty())
                for (std::size_t j = 0; j < layout.q(); ++j)
                    rec.w[layout.u(j)] = std::clamp(rec.w[layout.u(j)], lo[j], hi[j]);
        }
        traj.steps.push_back(rec);
        if (!rec.feasible && o.policy == InfeasiblePolicy::halt) {
            traj.halted = true;
            break;
        }

        // Augmented input: u then nu per chain.
        Vector wa(sys.q());
        for (std::size_t j = 0; j < layout.q(); ++j) wa[j] = rec.w[layout.u(j)];
        for (std::size_t c = 0; c < layout.adaptive_levels(); ++c) wa[layout.q() + c] = rec.w[layout.nu(c)];

        if (noisy) {
            const double h = o.dt / static_cast<double>(segments);
            for (std::size_t s = 0; s < segments; ++s) {
                const Vector noise = o.noise.sample_interval(k * segments + s);
                z = integrate_step(sys, z, wa, noise, h, seg_substeps);
            }
        } else {
            z = integrate_step(sys, z, wa, Vector(), o.dt, o.substeps);
        }
        last_w = rec.w;
    }
    return traj;
}

TrajectorySummary summarize(const Trajectory& traj) {
    if (traj.steps.empty()) throw ConfigError("cannot summarize an empty trajectory");
    TrajectorySummary s;
    s.steps = traj.steps.size();
    s.halted = traj.halted;
    s.activation_t = traj.activation_time;
    s.min_b = INFINITY;
    s.min_psi1 = INFINITY;
    double total = 0.0;
    for (const auto& r : traj.steps) {
        if (!r.psi.empty() && r.psi[0] < s.min_b) {
            s.min_b = r.psi[0];
            s.argmin_b_t = r.t;
        }
        if (r.psi.size() > 1 && r.psi[1] < s.min_psi1) {
            s.min_psi1 = r.psi[1];
            s.argmin_psi1_t = r.t;
        }
        if (!r.feasible) {
            ++s.infeasible_steps;
            if (!s.first_infeasible_t) s.first_infeasible_t = r.t;
        }
        total += r.solve_ms;
        s.max_solve_ms = std::max(s.max_solve_ms, r.solve_ms);
    }
    s.mean_solve_ms = total / static_cast<double>(s.steps);
    return s;
}

}  // namespace adacbf
