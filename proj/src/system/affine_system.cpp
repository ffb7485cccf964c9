#include "adacbf/system/affine_system.hpp"

#include "adacbf/numerics/errors.hpp"

namespace adacbf {

AffineControlSystem::AffineControlSystem(std::size_t n, std::size_t q, VectorFunction drift,
                                         MatrixFunction input_matrix)
    : n_(n), q_(q), drift_(std::move(drift)), g_(std::move(input_matrix)) {
    require_dims(drift_.arity() == n && drift_.out() == n, "drift must map R^n to R^n");
    require_dims(g_.arity() == n && g_.rows() == n && g_.cols() == q, "input matrix must be n x q");
}

Vector evaluate_rhs(const AffineControlSystem& sys, const Vector& x, const Vector& u) {
    require_dims(x.size() == sys.n(), "evaluate_rhs: state size mismatch");
    require_dims(u.size() == sys.q(), "evaluate_rhs: input size mismatch");
    Vector r = sys.drift()(x);
    r += sys.input_matrix()(x) * u;
    if (!all_finite(r)) throw NonFiniteError("evaluate_rhs: non-finite result");
    return r;
}

InputBounds InputBounds::constant(Vector lower, Vector upper) {
    require_dims(lower.size() == upper.size(), "input bounds: size mismatch");
    const std::size_t q = lower.size();
    return InputBounds(
        q, [lower](const BoundContext&) { return lower; }, [upper](const BoundContext&) { return upper; });
}

Vector InputBounds::lower(const BoundContext& ctx) const {
    Vector lo = lower_(ctx);
    require_dims(lo.size() == q_, "input bounds: lower size mismatch");
    return lo;
}

Vector InputBounds::upper(const BoundContext& ctx) const {
    Vector hi = upper_(ctx);
    require_dims(hi.size() == q_, "input bounds: upper size mismatch");
    const Vector lo = lower_(ctx);
    for (std::size_t i = 0; i < q_; ++i)
        if (lo[i] > hi[i]) throw ConfigError("input bounds: lower exceeds upper");
    return hi;
}

}  // namespace adacbf
