#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "adacbf/numerics/linalg.hpp"

namespace adacbf {

enum class Sense { geq, leq };

// coefficients . w + constant (>= or <=) 0
struct ConstraintRow {
    std::vector<double> coefficients;
    double constant = 0.0;
    Sense sense = Sense::geq;
    std::string label;

    double lhs(const Vector& w) const;
    bool satisfied(const Vector& w, double tol) const;
    // Rewrite as a . w <= b.
    void as_leq(double* a, double& b) const;
    bool finite() const;
};

// Decision vector order: u, system-CLF slacks, (nu_k, delta_k) per adaptive
// level, then the top penalty p_m when it is a decision variable.
class DecisionLayout {
public:
    DecisionLayout(std::size_t q, std::size_t clf_slacks, std::size_t adaptive_levels, bool top_penalty);

    std::size_t dim() const { return dim_; }
    std::size_t q() const { return q_; }
    std::size_t clf_slacks() const { return slacks_; }
    std::size_t adaptive_levels() const { return levels_; }
    bool has_top() const { return top_; }

    std::size_t u(std::size_t j) const;
    std::size_t slack(std::size_t k) const;
    std::size_t nu(std::size_t k) const;
    std::size_t delta(std::size_t k) const;
    std::size_t top() const;
    // Augmented input column (u then nu per chain) to decision index.
    std::size_t input_column(std::size_t c) const;

private:
    std::size_t q_, slacks_, levels_;
    bool top_;
    std::size_t dim_;
};

// Diagonal-plus-linear cost 1/2 w'Hw + F'w accumulated term by term.
struct QuadraticCost {
    Matrix H;
    Vector F;
    explicit QuadraticCost(std::size_t dim) : H(dim, dim), F(dim) {}
};

}  // namespace adacbf
