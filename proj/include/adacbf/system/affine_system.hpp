#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "adacbf/numerics/diff.hpp"
#include "adacbf/numerics/linalg.hpp"

namespace adacbf {

// xdot = f(x) + g(x) u
class AffineControlSystem {
public:
    AffineControlSystem(std::size_t n, std::size_t q, VectorFunction drift, MatrixFunction input_matrix);

    std::size_t n() const { return n_; }
    std::size_t q() const { return q_; }
    const VectorFunction& drift() const { return drift_; }
    const MatrixFunction& input_matrix() const { return g_; }

private:
    std::size_t n_;
    std::size_t q_;
    VectorFunction drift_;
    MatrixFunction g_;
};

Vector evaluate_rhs(const AffineControlSystem& sys, const Vector& x, const Vector& u);

struct BoundContext {
    double t = 0.0;
    std::optional<double> activation_time;
};

// Time-varying box u_min(t) <= u <= u_max(t).
class InputBounds {
public:
    using Fn = std::function<Vector(const BoundContext&)>;
    InputBounds() = default;
    InputBounds(std::size_t q, Fn lower, Fn upper) : q_(q), lower_(std::move(lower)), upper_(std::move(upper)) {}
    static InputBounds constant(Vector lower, Vector upper);
    static InputBounds none() { return {}; }

    std::size_t q() const { return q_; }
    bool empty() const { return q_ == 0; }
    Vector lower(const BoundContext& ctx) const;
    Vector upper(const BoundContext& ctx) const;

private:
    std::size_t q_ = 0;
    Fn lower_;
    Fn upper_;
};

}  // namespace adacbf
