#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "adacbf/numerics/dual.hpp"
#include "adacbf/numerics/linalg.hpp"

namespace adacbf {

using DualVec = std::vector<Dual>;
using DualSpan = std::span<const Dual>;

// Scalar evaluator R^arity -> R written once over Dual so it can be
// differentiated to any order.
class ScalarFunction {
public:
    using Fn = std::function<Dual(DualSpan)>;
    ScalarFunction() = default;
    ScalarFunction(std::size_t arity, Fn fn) : arity_(arity), fn_(std::move(fn)) {}

    std::size_t arity() const { return arity_; }
    explicit operator bool() const { return static_cast<bool>(fn_); }
    Dual operator()(DualSpan z) const;
    double operator()(const Vector& z) const;

private:
    std::size_t arity_ = 0;
    Fn fn_;
};

// Evaluator R^arity -> R^out.
class VectorFunction {
public:
    using Fn = std::function<DualVec(DualSpan)>;
    VectorFunction() = default;
    VectorFunction(std::size_t arity, std::size_t out, Fn fn)
        : arity_(arity), out_(out), fn_(std::move(fn)) {}

    std::size_t arity() const { return arity_; }
    std::size_t out() const { return out_; }
    DualVec operator()(DualSpan z) const;
    Vector operator()(const Vector& z) const;

private:
    std::size_t arity_ = 0;
    std::size_t out_ = 0;
    Fn fn_;
};

// Evaluator R^arity -> R^{rows x cols}, row-major result.
class MatrixFunction {
public:
    using Fn = std::function<DualVec(DualSpan)>;
    MatrixFunction() = default;
    MatrixFunction(std::size_t arity, std::size_t rows, std::size_t cols, Fn fn)
        : arity_(arity), rows_(rows), cols_(cols), fn_(std::move(fn)) {}

    std::size_t arity() const { return arity_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    DualVec operator()(DualSpan z) const;
    Matrix operator()(const Vector& z) const;

private:
    std::size_t arity_ = 0;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Fn fn_;
};

DualVec constant_duals(const Vector& z);
// Highest dual depth among the entries; the next free level for seeding.
int max_depth(DualSpan z);

struct ValueAndDerivative {
    Dual value;
    Dual derivative;
};

// Evaluate f at z + eps*d on a fresh outer level. z and d may already carry
// inner levels, so this nests.
ValueAndDerivative value_and_derivative_along(const ScalarFunction& f, DualSpan z, DualSpan d);

Vector gradient(const ScalarFunction& f, const Vector& z);
double directional_derivative(const ScalarFunction& f, const Vector& z, const Vector& d);

}  // namespace adacbf
