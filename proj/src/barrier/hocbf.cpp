#include "adacbf/barrier/hocbf.hpp"

#include "adacbf/numerics/errors.hpp"

namespace adacbf {

Cascade hocbf_cascade(const HocbfSpec& spec, const AffineControlSystem& sys, DiffOptions options) {
    if (spec.m < 1) throw ConfigError("HOCBF relative degree must be >= 1");
    const auto m = static_cast<std::size_t>(spec.m);
    if (spec.alphas.size() != m) throw ConfigError("HOCBF needs one class-K function per level");
    if (!spec.penalties.empty() && spec.penalties.size() != m) throw ConfigError("HOCBF needs one penalty per level");
    require_dims(spec.barrier.arity() == sys.n(), "HOCBF barrier arity must equal state dimension");
    std::vector<CascadeLevel> levels;
    for (std::size_t i = 0; i < m; ++i) {
        const double p = spec.penalties.empty() ? 1.0 : spec.penalties[i];
        if (!(p > 0.0)) throw ConfigError("HOCBF penalties must be > 0");
        levels.push_back({spec.alphas[i], PenaltySource::constant(p)});
    }
    return Cascade(spec.barrier, sys.drift(), std::move(levels), options);
}

std::vector<double> psi_cascade(const HocbfSpec& spec, const AffineControlSystem& sys, const Vector& x) {
    return hocbf_cascade(spec, sys).values(x);
}

ConstraintRow hocbf_row(const HocbfSpec& spec, const AffineControlSystem& sys, const Vector& x) {
    return hocbf_row(spec, sys, x, DecisionLayout(sys.q(), 0, 0, false));
}

ConstraintRow hocbf_row(const HocbfSpec& spec, const AffineControlSystem& sys, const Vector& x,
                        const DecisionLayout& layout) {
    require_dims(layout.q() == sys.q(), "HOCBF row: layout input size mismatch");
    return hocbf_cascade(spec, sys).row(x, sys.input_matrix()(x), layout, spec.label);
}

}  // namespace adacbf
