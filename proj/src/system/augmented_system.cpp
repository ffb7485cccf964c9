#include "adacbf/system/augmented_system.hpp"

#include "adacbf/numerics/errors.hpp"

namespace adacbf {

AugmentedSystem::AugmentedSystem(AffineControlSystem base, std::vector<int> chain_lengths)
    : base_(std::move(base)), chains_(std::move(chain_lengths)) {
    std::size_t n = base_.n();
    for (int len : chains_) {
        if (len < 1) throw ConfigError("integrator chain length must be >= 1");
        offsets_.push_back(n);
        n += static_cast<std::size_t>(len);
    }
    n_ = n;

    const std::size_t nb = base_.n();
    const std::size_t qb = base_.q();
    const auto offsets = offsets_;
    const auto chains = chains_;
    const VectorFunction f = base_.drift();
    const MatrixFunction g = base_.input_matrix();

    drift_ = VectorFunction(n_, n_, [=](DualSpan z) {
        DualVec out(z.size(), Dual(0.0));
        DualVec fx = f(z.subspan(0, nb));
        for (std::size_t i = 0; i < nb; ++i) out[i] = fx[i];
        for (std::size_t k = 0; k < chains.size(); ++k) {
            const std::size_t o = offsets[k];
            for (int j = 0; j + 1 < chains[k]; ++j) out[o + j] = z[o + j + 1];
        }
        return out;
    });

    const std::size_t qa = qb + chains_.size();
    const std::size_t na = n_;
    g_ = MatrixFunction(n_, n_, qa, [=](DualSpan z) {
        DualVec out(na * qa, Dual(0.0));
        DualVec gx = g(z.subspan(0, nb));
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < qb; ++j) out[i * qa + j] = gx[i * qb + j];
        for (std::size_t k = 0; k < chains.size(); ++k) {
            const std::size_t tail = offsets[k] + static_cast<std::size_t>(chains[k]) - 1;
            out[tail * qa + qb + k] = Dual(1.0);
        }
        return out;
    });
}

Vector AugmentedSystem::rhs(const Vector& z, const Vector& w, const Vector* noise) const {
    require_dims(z.size() == n_, "augmented rhs: state size mismatch");
    require_dims(w.size() == q(), "augmented rhs: input size mismatch");
    Vector r = drift_(z);
    r += g_(z) * w;
    if (noise != nullptr && !noise->empty()) {
        require_dims(noise->size() == base_.n(), "augmented rhs: noise size mismatch");
        for (std::size_t i = 0; i < base_.n(); ++i) r[i] += (*noise)[i];
    }
    if (!all_finite(r)) throw NonFiniteError("augmented rhs: non-finite result");
    return r;
}

Vector AugmentedSystem::base_state(const Vector& z) const {
    require_dims(z.size() == n_, "augmented state size mismatch");
    return Vector(std::vector<double>(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(base_.n())));
}

AugmentedSystem augment(const AffineControlSystem& sys, std::vector<int> chain_lengths) {
    return AugmentedSystem(sys, std::move(chain_lengths));
}

}  // namespace adacbf
