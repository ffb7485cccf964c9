#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "adacbf/barrier/class_k.hpp"
#include "adacbf/barrier/constraint_row.hpp"
#include "adacbf/numerics/diff.hpp"

namespace adacbf {

struct RelativeDegreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Where the multiplier p_i of alpha_i comes from.
struct PenaltySource {
    enum class Kind { constant, state, decision };
    Kind kind = Kind::constant;
    double value = 1.0;
    std::size_t index = 0;

    static PenaltySource constant(double v) { return {Kind::constant, v, 0}; }
    static PenaltySource state(std::size_t i) { return {Kind::state, 0.0, i}; }
    // Only valid on the last level; the row then has an alpha_m(psi_{m-1}) column.
    static PenaltySource decision() { return {Kind::decision, 0.0, 0}; }
};

struct CascadeLevel {
    ClassK alpha;
    PenaltySource penalty;
};

struct DiffOptions {
    // Nesting budget for psi_{m-1}; the row adds one more level on top.
    int max_depth = 4;
};

// Gradient pieces of a scalar function h along an affine field.
struct LieTerms {
    double value = 0.0;
    double lf = 0.0;   // grad h . F
    Vector lg;         // grad h . G columns
};

LieTerms lie_terms(const ScalarFunction& h, const Vector& z, const Vector& drift, const Matrix& input_matrix);

// psi_0 = b, psi_i = L_F psi_{i-1} + p_i alpha_i(psi_{i-1}) over a state z
// with drift F. Lie derivatives are taken by nesting duals, one level per i.
class Cascade {
public:
    Cascade(ScalarFunction barrier, VectorFunction drift, std::vector<CascadeLevel> levels, DiffOptions options = {});

    int relative_degree() const { return static_cast<int>(levels_.size()); }
    std::size_t arity() const { return barrier_.arity(); }
    const std::vector<CascadeLevel>& levels() const { return levels_; }

    Dual psi(int i, DualSpan z) const;
    ScalarFunction psi_function(int i) const;
    // psi_0 .. psi_{m-1}
    std::vector<double> values(const Vector& z) const;

    // Row psi_m >= 0 linear in the decision vector: G columns map through
    // layout.input_column; a decision top penalty fills layout.top().
    ConstraintRow row(const Vector& z, const Matrix& input_matrix, const DecisionLayout& layout,
                      const std::string& label) const;

private:
    Dual penalty(const PenaltySource& p, DualSpan z) const;

    ScalarFunction barrier_;
    VectorFunction drift_;
    std::vector<CascadeLevel> levels_;
    DiffOptions options_;
};

// Checks L_g L_f^k b ~ 0 for k < m-1 and != 0 at k = m-1, at one state only.
void validate_relative_degree(const ScalarFunction& barrier, const VectorFunction& drift,
                              const MatrixFunction& input_matrix, int m, const Vector& z0, double tol = 1e-9);

}  // namespace adacbf
