#include "adacbf/barrier/constraint_row.hpp"

#include <cmath>

#include "adacbf/numerics/errors.hpp"
#include "adacbf/numerics/kernels.hpp"

namespace adacbf {

double ConstraintRow::lhs(const Vector& w) const {
    require_dims(w.size() == coefficients.size(), "constraint row: decision size mismatch");
    return kernels::dot(coefficients.data(), w.data(), w.size()) + constant;
}

bool ConstraintRow::satisfied(const Vector& w, double tol) const {
    const double v = lhs(w);
    return sense == Sense::geq ? v >= -tol : v <= tol;
}

void ConstraintRow::as_leq(double* a, double& b) const {
    const double s = sense == Sense::geq ? -1.0 : 1.0;
    for (std::size_t j = 0; j < coefficients.size(); ++j) a[j] = s * coefficients[j];
    b = -s * constant;
}

bool ConstraintRow::finite() const {
    if (!std::isfinite(constant)) return false;
    for (double c : coefficients)
        if (!std::isfinite(c)) return false;
    return true;
}

DecisionLayout::DecisionLayout(std::size_t q, std::size_t clf_slacks, std::size_t adaptive_levels, bool top_penalty)
    : q_(q), slacks_(clf_slacks), levels_(adaptive_levels), top_(top_penalty),
      dim_(q + clf_slacks + 2 * adaptive_levels + (top_penalty ? 1 : 0)) {}

std::size_t DecisionLayout::u(std::size_t j) const {
    require_dims(j < q_, "layout: input index out of range");
    return j;
}

std::size_t DecisionLayout::slack(std::size_t k) const {
    require_dims(k < slacks_, "layout: slack index out of range");
    return q_ + k;
}

std::size_t DecisionLayout::nu(std::size_t k) const {
    require_dims(k < levels_, "layout: level index out of range");
    return q_ + slacks_ + 2 * k;
}

std::size_t DecisionLayout::delta(std::size_t k) const {
    require_dims(k < levels_, "layout: level index out of range");
    return q_ + slacks_ + 2 * k + 1;
}

std::size_t DecisionLayout::top() const {
    require_dims(top_, "layout: no top penalty variable");
    return dim_ - 1;
}

std::size_t DecisionLayout::input_column(std::size_t c) const { return c < q_ ? u(c) : nu(c - q_); }

}  // namespace adacbf
