#include "adacbf/barrier/cascade.hpp"

#include <cmath>
#include <string>

#include "adacbf/numerics/errors.hpp"
#include "adacbf/numerics/kernels.hpp"

namespace adacbf {

LieTerms lie_terms(const ScalarFunction& h, const Vector& z, const Vector& drift, const Matrix& input_matrix) {
    require_dims(drift.size() == z.size() && input_matrix.rows() == z.size(), "lie_terms: size mismatch");
    LieTerms t;
    t.value = h(z);
    const Vector grad = gradient(h, z);
    t.lf = dot(grad, drift);
    t.lg = transpose_times(input_matrix, grad);
    return t;
}

Cascade::Cascade(ScalarFunction barrier, VectorFunction drift, std::vector<CascadeLevel> levels, DiffOptions options)
    : barrier_(std::move(barrier)), drift_(std::move(drift)), levels_(std::move(levels)), options_(options) {
    if (levels_.empty()) throw ConfigError("cascade needs relative degree >= 1");
    require_dims(barrier_.arity() == drift_.arity() && drift_.out() == drift_.arity(),
                 "cascade: barrier and drift arity mismatch");
    const int m = relative_degree();
    if (m - 1 > options_.max_depth)
        throw DepthError("relative degree " + std::to_string(m) + " needs nesting depth " + std::to_string(m - 1) +
                         " > configured " + std::to_string(options_.max_depth));
    if (m > Dual::kCapacityDepth)
        throw DepthError("relative degree " + std::to_string(m) + " exceeds compiled dual capacity");
    for (std::size_t i = 0; i + 1 < levels_.size(); ++i)
        if (levels_[i].penalty.kind == PenaltySource::Kind::decision)
            throw ConfigError("only the last cascade level may take its penalty from the decision vector");
    for (const auto& l : levels_)
        if (l.penalty.kind == PenaltySource::Kind::state) require_dims(l.penalty.index < arity(), "penalty state index");
}

Dual Cascade::penalty(const PenaltySource& p, DualSpan z) const {
    switch (p.kind) {
        case PenaltySource::Kind::constant:
            return Dual(p.value);
        case PenaltySource::Kind::state:
            return z[p.index];
        case PenaltySource::Kind::decision:
            break;
    }
    throw ConfigError("decision penalty has no state value");
}

Dual Cascade::psi(int i, DualSpan z) const {
    if (i < 0 || i >= relative_degree()) throw ConfigError("psi index out of range");
    if (i == 0) return barrier_(z);
    const DualVec f = drift_(z);
    const int level = std::max(max_depth(z), max_depth(DualSpan(f)));
    DualVec lifted(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) lifted[j] = Dual::lift(z[j], f[j], level);
    const Dual prev = psi(i - 1, DualSpan(lifted));
    const Dual lf = prev.derivative_part(level);
    const Dual val = prev.value_part(level);
    const CascadeLevel& l = levels_[static_cast<std::size_t>(i - 1)];
    return lf + penalty(l.penalty, z) * l.alpha(val);
}

ScalarFunction Cascade::psi_function(int i) const {
    if (i < 0 || i >= relative_degree()) throw ConfigError("psi index out of range");
    return ScalarFunction(arity(), [self = *this, i](DualSpan z) { return self.psi(i, z); });
}

std::vector<double> Cascade::values(const Vector& z) const {
    const DualVec zd = constant_duals(z);
    std::vector<double> out;
    for (int i = 0; i < relative_degree(); ++i) {
        const double v = psi(i, DualSpan(zd)).real();
        if (!std::isfinite(v)) throw NonFiniteError("psi cascade: non-finite value");
        out.push_back(v);
    }
    return out;
}

ConstraintRow Cascade::row(const Vector& z, const Matrix& input_matrix, const DecisionLayout& layout,
                           const std::string& label) const {
    const int m = relative_degree();
    const ScalarFunction top = psi_function(m - 1);
    const LieTerms t = lie_terms(top, z, drift_(z), input_matrix);
    ConstraintRow r;
    r.label = label;
    r.sense = Sense::geq;
    r.coefficients.assign(layout.dim(), 0.0);
    bool any_input = false;
    for (std::size_t c = 0; c < t.lg.size(); ++c) {
        if (t.lg[c] != 0.0) any_input = true;
        r.coefficients[layout.input_column(c)] += t.lg[c];
    }
    if (!any_input)
        throw RelativeDegreeError(label + ": input coefficients vanish; relative degree is mis-specified");
    const CascadeLevel& last = levels_.back();
    const double a = last.alpha(t.value);
    r.constant = t.lf;
    if (last.penalty.kind == PenaltySource::Kind::decision) {
        r.coefficients[layout.top()] += a;
    } else {
        r.constant += penalty(last.penalty, DualSpan(constant_duals(z))).real() * a;
    }
    if (!r.finite()) throw NonFiniteError(label + ": non-finite row");
    return r;
}

void validate_relative_degree(const ScalarFunction& barrier, const VectorFunction& drift,
                              const MatrixFunction& input_matrix, int m, const Vector& z0, double tol) {
    if (m < 1) throw RelativeDegreeError("relative degree must be >= 1");
    // Pure Lie chain: zero penalties leave psi_k = L_f^k b.
    std::vector<CascadeLevel> levels(static_cast<std::size_t>(m), CascadeLevel{ClassK::linear(), PenaltySource::constant(0.0)});
    const Cascade chain(barrier, drift, levels, DiffOptions{Dual::kCapacityDepth - 1});
    const Vector f = drift(z0);
    const Matrix g = input_matrix(z0);
    for (int k = 0; k < m; ++k) {
        const LieTerms t = lie_terms(chain.psi_function(k), z0, f, g);
        const double scale = 1.0 + norm_inf(gradient(chain.psi_function(k), z0));
        const double lg = norm_inf(t.lg);
        if (k < m - 1 && lg > tol * scale)
            throw RelativeDegreeError("input appears at derivative order " + std::to_string(k + 1) + " < " +
                                      std::to_string(m));
        if (k == m - 1 && lg <= tol * scale)
            throw RelativeDegreeError("input does not appear at derivative order " + std::to_string(m));
    }
}

}  // namespace adacbf
