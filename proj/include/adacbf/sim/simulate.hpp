#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adacbf/barrier/constraint_row.hpp"
#include "adacbf/qp/qp.hpp"
#include "adacbf/system/augmented_system.hpp"
#include "adacbf/system/noise.hpp"

namespace adacbf {

enum class InfeasiblePolicy { halt, hold_last_control, clamp_to_bounds };
const char* to_string(InfeasiblePolicy p);
InfeasiblePolicy parse_infeasible_policy(const std::string& s);

struct InitialConditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct StepContext {
    double t = 0.0;
    const Vector& z;
    std::optional<double> activation_time;
};

struct ClosedLoopProblem {
    AugmentedSystem system;
    DecisionLayout layout;
    std::function<std::vector<ConstraintRow>(const StepContext&)> rows;
    std::function<QuadraticCost(const StepContext&)> cost;
    InputBounds bounds;  // on u; stacked as rows each step
    // psi_0 .. psi_{m-1} of the safety cascade at z.
    std::function<std::vector<double>(const Vector&)> diagnostics;
    std::string activation_label;
    Vector initial_state;
};

struct SimOptions {
    double T = 30.0;
    double dt = 0.1;
    int substeps = 10;
    InfeasiblePolicy policy = InfeasiblePolicy::hold_last_control;
    QpOptions qp;
    NoiseModel noise;
    double activation_tol = 1e-9;
};

struct StepRecord {
    double t = 0.0;
    Vector z;                 // state at the start of the step
    Vector w;                 // applied decision vector
    std::vector<double> psi;  // psi_0 .. psi_{m-1} at z
    Vector u_lower;
    Vector u_upper;
    bool feasible = false;
    QpStatus status = QpStatus::max_iterations;
    double solve_ms = 0.0;
    int qp_iterations = 0;
};

struct Trajectory {
    std::vector<StepRecord> steps;
    std::vector<std::string> row_labels;
    bool halted = false;
    std::optional<double> activation_time;
};

struct TrajectorySummary {
    std::size_t steps = 0;
    double min_b = 0.0;
    double argmin_b_t = 0.0;
    double min_psi1 = 0.0;
    double argmin_psi1_t = 0.0;
    std::size_t infeasible_steps = 0;
    std::optional<double> first_infeasible_t;
    double mean_solve_ms = 0.0;
    double max_solve_ms = 0.0;
    std::optional<double> activation_t;
    bool halted = false;
};

// Assemble rows (plus input-bound rows) and cost at each step, solve, apply
// per policy, and integrate with RK4. With active noise each dt is split
// into noise-hold segments integrated separately.
Trajectory run(const ClosedLoopProblem& problem, const SimOptions& options);
TrajectorySummary summarize(const Trajectory& traj);

// Stack rows into A w <= b.
QpProblem assemble_qp(const QuadraticCost& cost, const std::vector<ConstraintRow>& rows);
std::vector<ConstraintRow> input_bound_rows(const DecisionLayout& layout, const Vector& lower, const Vector& upper);

}  // namespace adacbf
