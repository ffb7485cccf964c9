#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adacbf/barrier/cascade.hpp"
#include "adacbf/barrier/clf.hpp"
#include "adacbf/system/augmented_system.hpp"

namespace adacbf {

// Penalty p_i on alpha_i for i < m.
struct PenaltyLevelSpec {
    bool adaptive = false;
    double initial = 1.0;  // p_i(0); the frozen value when not adaptive
    double target = 1.0;   // p_i*
    std::vector<ClassK> guard_alphas;  // HOCBF keeping p_i >= 0; empty means unit linear
    std::vector<double> gains;         // k_1..k_{L-1} of the desired feedback; empty means 1
    double clf_rate = 10.0;
    double W = 1.0;  // linear weight on nu_i
    double P = 1.0;  // weight on delta_i^2
};

struct TopPenaltySpec {
    bool adaptive = true;  // p_m as a decision variable
    double value = 1.0;    // frozen value when not adaptive
    double target = 1.0;   // p_m*
    double Q = 1.0;
};

struct AdaCbfSpec {
    ScalarFunction barrier;  // over the base state
    int m = 1;
    std::vector<ClassK> alphas;             // m entries
    std::vector<PenaltyLevelSpec> levels;   // m-1 entries
    TopPenaltySpec top;
    std::string label = "adacbf";
};

// Chain length m-i for each adaptive level i < m, in level order.
std::vector<int> chain_lengths(const AdaCbfSpec& spec);
DecisionLayout adacbf_layout(const AdaCbfSpec& spec, std::size_t q, std::size_t clf_slacks);
// Base state followed by chain states: heads at p_i(0), higher derivatives 0.
Vector initial_augmented_state(const AdaCbfSpec& spec, const AugmentedSystem& aug, const Vector& x0);

class AdaCbf {
public:
    AdaCbf(AdaCbfSpec spec, AugmentedSystem aug, DiffOptions options = {});

    const AdaCbfSpec& spec() const { return spec_; }
    const AugmentedSystem& system() const { return aug_; }
    const Cascade& cascade() const { return cascade_; }
    std::size_t adaptive_levels() const { return level_of_chain_.size(); }

    std::vector<double> psi_cascade(const Vector& z) const;
    ConstraintRow adacbf_row(const Vector& z, const DecisionLayout& layout) const;
    std::vector<ConstraintRow> penalty_hocbf_rows(const Vector& z, const DecisionLayout& layout) const;
    std::vector<ConstraintRow> penalty_clf_rows(const Vector& z, const DecisionLayout& layout) const;
    // p_m >= 0 when p_m is a decision variable.
    std::optional<ConstraintRow> top_penalty_row(const DecisionLayout& layout) const;
    // Adds W_i nu_i + P_i delta_i^2 + Q (p_m - p_m*)^2 (constant dropped).
    void add_penalty_cost(QuadraticCost& cost, const DecisionLayout& layout) const;

    // Lyapunov function of the penalty CLF for chain k.
    ScalarFunction penalty_lyapunov(std::size_t k) const;

private:
    AdaCbfSpec spec_;
    AugmentedSystem aug_;
    Cascade cascade_;
    std::vector<std::size_t> level_of_chain_;
    std::vector<Cascade> guards_;
};

// Constructive assignment of (nu, p_m) for a fixed u that satisfies the
// AdaCBF row and the penalty HOCBF rows. Other entries of w are kept.
std::optional<Vector> satisfiability_witness(const ConstraintRow& adacbf, const std::vector<ConstraintRow>& guards,
                                             const DecisionLayout& layout, Vector w);

ConstraintRow adacbf_row(const AdaCbfSpec& spec, const AugmentedSystem& aug, const Vector& z);
std::vector<ConstraintRow> penalty_hocbf_rows(const AdaCbfSpec& spec, const AugmentedSystem& aug, const Vector& z);
std::vector<ConstraintRow> penalty_clf_rows(const AdaCbfSpec& spec, const AugmentedSystem& aug, const Vector& z);

}  // namespace adacbf
