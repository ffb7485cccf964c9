#include "adacbf/barrier/clf.hpp"

#include "adacbf/numerics/errors.hpp"

namespace adacbf {

ConstraintRow clf_row(const ClfSpec& spec, const Vector& z, const Vector& drift, const Matrix& input_matrix,
                      const DecisionLayout& layout, std::size_t slack_index) {
    if (!(spec.rate > 0.0)) throw ConfigError("CLF rate must be > 0");
    require_dims(slack_index < layout.dim(), "CLF slack index out of range");
    const LieTerms t = lie_terms(spec.V, z, drift, input_matrix);
    ConstraintRow r;
    r.label = spec.label;
    r.sense = Sense::leq;
    r.coefficients.assign(layout.dim(), 0.0);
    for (std::size_t c = 0; c < t.lg.size(); ++c) r.coefficients[layout.input_column(c)] += t.lg[c];
    r.coefficients[slack_index] -= 1.0;
    r.constant = t.lf + spec.rate * t.value;
    if (!r.finite()) throw NonFiniteError(spec.label + ": non-finite row");
    return r;
}

ConstraintRow clf_row(const ClfSpec& spec, const AffineControlSystem& sys, const Vector& x,
                      const DecisionLayout& layout, std::size_t slack_index) {
    return clf_row(spec, x, sys.drift()(x), sys.input_matrix()(x), layout, slack_index);
}

}  // namespace adacbf
