#include "adacbf/barrier/adacbf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adacbf/numerics/errors.hpp"

namespace adacbf {

namespace {

void validate(const AdaCbfSpec& spec) {
    if (spec.m < 1) throw ConfigError("AdaCBF relative degree must be >= 1");
    const auto m = static_cast<std::size_t>(spec.m);
    if (spec.alphas.size() != m) throw ConfigError("AdaCBF needs one class-K function per level");
    if (spec.levels.size() != m - 1) throw ConfigError("AdaCBF needs m-1 penalty level entries");
    for (std::size_t i = 0; i < spec.levels.size(); ++i) {
        const auto& l = spec.levels[i];
        const std::size_t chain = m - (i + 1);
        if (!(l.initial > 0.0)) throw ConfigError("penalty initial value must be > 0");
        if (!l.adaptive) continue;
        if (!(l.target > 0.0)) throw ConfigError("penalty target must be > 0");
        if (!(l.W > 0.0) || !(l.P > 0.0)) throw ConfigError("penalty weights W, P must be > 0");
        if (!(l.clf_rate > 0.0)) throw ConfigError("penalty CLF rate must be > 0");
        if (!l.guard_alphas.empty() && l.guard_alphas.size() != chain)
            throw ConfigError("penalty guard needs one class-K per chain state");
        if (!l.gains.empty() && l.gains.size() + 1 != chain)
            throw ConfigError("penalty feedback needs chain length - 1 gains");
        for (double k : l.gains)
            if (!(k > 0.0)) throw ConfigError("feedback gains must be > 0");
    }
    if (spec.top.adaptive) {
        if (!(spec.top.Q >= 0.0)) throw ConfigError("top penalty weight Q must be >= 0");
    } else if (!(spec.top.value > 0.0)) {
        throw ConfigError("frozen top penalty must be > 0");
    }
}

ScalarFunction lift_barrier(const ScalarFunction& b, std::size_t n_aug) {
    const std::size_t n = b.arity();
    return ScalarFunction(n_aug, [b, n](DualSpan z) { return b(z.subspan(0, n)); });
}

}  // namespace

std::vector<int> chain_lengths(const AdaCbfSpec& spec) {
    std::vector<int> out;
    for (std::size_t i = 0; i < spec.levels.size(); ++i)
        if (spec.levels[i].adaptive) out.push_back(spec.m - static_cast<int>(i + 1));
    return out;
}

DecisionLayout adacbf_layout(const AdaCbfSpec& spec, std::size_t q, std::size_t clf_slacks) {
    return DecisionLayout(q, clf_slacks, chain_lengths(spec).size(), spec.top.adaptive);
}

Vector initial_augmented_state(const AdaCbfSpec& spec, const AugmentedSystem& aug, const Vector& x0) {
    require_dims(x0.size() == aug.base().n(), "initial state size mismatch");
    Vector z(aug.n(), 0.0);
    for (std::size_t i = 0; i < x0.size(); ++i) z[i] = x0[i];
    std::size_t k = 0;
    for (const auto& l : spec.levels)
        if (l.adaptive) z[aug.chain_head(k++)] = l.initial;
    return z;
}

AdaCbf::AdaCbf(AdaCbfSpec spec, AugmentedSystem aug, DiffOptions options)
    : spec_((validate(spec), std::move(spec))),
      aug_(std::move(aug)),
      cascade_([&] {
          if (aug_.chains() != chain_lengths(spec_))
              throw ConfigError("augmented system chains do not match the AdaCBF penalty levels");
          require_dims(spec_.barrier.arity() == aug_.base().n(), "AdaCBF barrier arity must equal base state size");
          std::vector<CascadeLevel> levels;
          std::size_t k = 0;
          for (std::size_t i = 0; i < spec_.levels.size(); ++i) {
              const auto& l = spec_.levels[i];
              levels.push_back({spec_.alphas[i], l.adaptive ? PenaltySource::state(aug_.chain_head(k++))
                                                            : PenaltySource::constant(l.initial)});
          }
          levels.push_back({spec_.alphas.back(), spec_.top.adaptive ? PenaltySource::decision()
                                                                     : PenaltySource::constant(spec_.top.value)});
          return Cascade(lift_barrier(spec_.barrier, aug_.n()), aug_.drift(), std::move(levels), options);
      }()) {
    for (std::size_t i = 0; i < spec_.levels.size(); ++i) {
        const auto& l = spec_.levels[i];
        if (!l.adaptive) continue;
        const std::size_t k = level_of_chain_.size();
        level_of_chain_.push_back(i);
        const std::size_t head = aug_.chain_head(k);
        const int len = aug_.chains()[k];
        ScalarFunction p(aug_.n(), [head](DualSpan z) { return z[head]; });
        std::vector<CascadeLevel> g;
        for (int j = 0; j < len; ++j)
            g.push_back({l.guard_alphas.empty() ? ClassK::linear() : l.guard_alphas[static_cast<std::size_t>(j)],
                         PenaltySource::constant(1.0)});
        guards_.emplace_back(p, aug_.drift(), std::move(g), options);
    }
}

std::vector<double> AdaCbf::psi_cascade(const Vector& z) const {
    require_dims(z.size() == aug_.n(), "psi cascade: augmented state size mismatch");
    return cascade_.values(z);
}

ConstraintRow AdaCbf::adacbf_row(const Vector& z, const DecisionLayout& layout) const {
    require_dims(z.size() == aug_.n(), "AdaCBF row: augmented state size mismatch");
    require_dims(layout.adaptive_levels() == adaptive_levels() && layout.has_top() == spec_.top.adaptive,
                 "AdaCBF row: layout does not match spec");
    return cascade_.row(z, aug_.input_matrix()(z), layout, spec_.label);
}

std::vector<ConstraintRow> AdaCbf::penalty_hocbf_rows(const Vector& z, const DecisionLayout& layout) const {
    require_dims(z.size() == aug_.n(), "penalty HOCBF rows: augmented state size mismatch");
    const Matrix g = aug_.input_matrix()(z);
    std::vector<ConstraintRow> rows;
    for (std::size_t k = 0; k < guards_.size(); ++k)
        rows.push_back(guards_[k].row(z, g, layout, "p" + std::to_string(level_of_chain_[k] + 1) + "_hocbf"));
    return rows;
}

ScalarFunction AdaCbf::penalty_lyapunov(std::size_t k) const {
    require_dims(k < guards_.size(), "penalty CLF: chain index out of range");
    const auto& l = spec_.levels[level_of_chain_[k]];
    const std::size_t head = aug_.chain_head(k);
    const int len = aug_.chains()[k];
    const double target = l.target;
    if (len == 1)
        return ScalarFunction(aug_.n(), [head, target](DualSpan z) { return square(z[head] - target); });
    // V = (p_L - p_hat)^2, p_hat = -k1 (p - p*) - k2 p_2 - ... - k_{L-1} p_{L-1}
    std::vector<double> gains = l.gains.empty() ? std::vector<double>(static_cast<std::size_t>(len - 1), 1.0) : l.gains;
    return ScalarFunction(aug_.n(), [head, len, target, gains](DualSpan z) {
        Dual phat = -gains[0] * (z[head] - target);
        for (int j = 1; j + 1 < len; ++j) phat -= gains[static_cast<std::size_t>(j)] * z[head + j];
        return square(z[head + static_cast<std::size_t>(len) - 1] - phat);
    });
}

std::vector<ConstraintRow> AdaCbf::penalty_clf_rows(const Vector& z, const DecisionLayout& layout) const {
    require_dims(z.size() == aug_.n(), "penalty CLF rows: augmented state size mismatch");
    const Vector f = aug_.drift()(z);
    const Matrix g = aug_.input_matrix()(z);
    std::vector<ConstraintRow> rows;
    for (std::size_t k = 0; k < guards_.size(); ++k) {
        const auto& l = spec_.levels[level_of_chain_[k]];
        const ClfSpec clf{penalty_lyapunov(k), l.clf_rate, l.P, "p" + std::to_string(level_of_chain_[k] + 1) + "_clf"};
        rows.push_back(clf_row(clf, z, f, g, layout, layout.delta(k)));
    }
    return rows;
}

std::optional<ConstraintRow> AdaCbf::top_penalty_row(const DecisionLayout& layout) const {
    if (!spec_.top.adaptive) return std::nullopt;
    ConstraintRow r;
    r.label = "p" + std::to_string(spec_.m) + "_nonneg";
    r.sense = Sense::geq;
    r.coefficients.assign(layout.dim(), 0.0);
    r.coefficients[layout.top()] = 1.0;
    return r;
}

void AdaCbf::add_penalty_cost(QuadraticCost& cost, const DecisionLayout& layout) const {
    require_dims(cost.F.size() == layout.dim(), "penalty cost: dimension mismatch");
    for (std::size_t k = 0; k < guards_.size(); ++k) {
        const auto& l = spec_.levels[level_of_chain_[k]];
        cost.F[layout.nu(k)] += l.W;
        cost.H(layout.delta(k), layout.delta(k)) += 2.0 * l.P;
    }
    if (spec_.top.adaptive) {
        const std::size_t t = layout.top();
        cost.H(t, t) += 2.0 * spec_.top.Q;
        cost.F[t] += -2.0 * spec_.top.Q * spec_.top.target;
    }
}

std::optional<Vector> satisfiability_witness(const ConstraintRow& adacbf, const std::vector<ConstraintRow>& guards,
                                             const DecisionLayout& layout, Vector w) {
    require_dims(w.size() == layout.dim(), "witness: decision size mismatch");
    if (layout.has_top()) w[layout.top()] = 0.0;
    // Each guard row only involves its own nu; start every nu at its guard minimum.
    for (std::size_t k = 0; k < layout.adaptive_levels(); ++k) {
        const std::size_t j = layout.nu(k);
        w[j] = 0.0;
        for (const auto& g : guards) {
            const double c = g.coefficients[j];
            if (c == 0.0) continue;
            const double rest = g.lhs(w);
            if (c > 0.0 && rest < 0.0) w[j] = -rest / c;
        }
    }
    if (adacbf.lhs(w) < 0.0) {
        // Raise the first nu with a positive AdaCBF coefficient.
        for (std::size_t k = 0; k < layout.adaptive_levels(); ++k) {
            const std::size_t j = layout.nu(k);
            const double c = adacbf.coefficients[j];
            if (c > 0.0) {
                w[j] += -adacbf.lhs(w) / c;
                break;
            }
        }
    }
    const double scale = 1.0 + norm_inf(Vector(std::vector<double>(adacbf.coefficients))) * (1.0 + norm_inf(w));
    if (adacbf.lhs(w) < -1e-12 * scale) return std::nullopt;
    for (const auto& g : guards)
        if (!g.satisfied(w, 1e-12 * (1.0 + norm_inf(w)))) return std::nullopt;
    return w;
}

ConstraintRow adacbf_row(const AdaCbfSpec& spec, const AugmentedSystem& aug, const Vector& z) {
    const AdaCbf a(spec, aug);
    return a.adacbf_row(z, adacbf_layout(spec, aug.base().q(), 0));
}

std::vector<ConstraintRow> penalty_hocbf_rows(const AdaCbfSpec& spec, const AugmentedSystem& aug, const Vector& z) {
    const AdaCbf a(spec, aug);
    return a.penalty_hocbf_rows(z, adacbf_layout(spec, aug.base().q(), 0));
}

std::vector<ConstraintRow> penalty_clf_rows(const AdaCbfSpec& spec, const AugmentedSystem& aug, const Vector& z) {
    const AdaCbf a(spec, aug);
    return a.penalty_clf_rows(z, adacbf_layout(spec, aug.base().q(), 0));
}

}  // namespace adacbf
