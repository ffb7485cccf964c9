#pragma once

#include <cstddef>
#include <vector>

#include "adacbf/system/affine_system.hpp"

namespace adacbf {

// Base system plus pure integrator chains for penalty functions:
// z = (x, chain_0, chain_1, ...), w = (u, nu_0, nu_1, ...).
// Chain k of length L: p' = p_2, ..., p_L' = nu_k. Output y_k = p (the head).
class AugmentedSystem {
public:
    AugmentedSystem(AffineControlSystem base, std::vector<int> chain_lengths);

    const AffineControlSystem& base() const { return base_; }
    const std::vector<int>& chains() const { return chains_; }
    std::size_t n() const { return n_; }
    std::size_t q() const { return base_.q() + chains_.size(); }
    std::size_t chain_head(std::size_t k) const { return offsets_.at(k); }
    std::size_t chain_tail(std::size_t k) const { return offsets_.at(k) + static_cast<std::size_t>(chains_.at(k)) - 1; }
    std::size_t nu_column(std::size_t k) const { return base_.q() + k; }

    const VectorFunction& drift() const { return drift_; }
    const MatrixFunction& input_matrix() const { return g_; }

    // F(z) + G(z) w + noise on the base block.
    Vector rhs(const Vector& z, const Vector& w, const Vector* noise = nullptr) const;
    Vector base_state(const Vector& z) const;

private:
    AffineControlSystem base_;
    std::vector<int> chains_;
    std::vector<std::size_t> offsets_;
    std::size_t n_;
    VectorFunction drift_;
    MatrixFunction g_;
};

AugmentedSystem augment(const AffineControlSystem& sys, std::vector<int> chain_lengths);

}  // namespace adacbf
