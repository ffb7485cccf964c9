#include "adacbf/numerics/diff.hpp"

#include <algorithm>
#include <cmath>

#include "adacbf/numerics/errors.hpp"

namespace adacbf {

Dual ScalarFunction::operator()(DualSpan z) const {
    require_dims(z.size() == arity_, "scalar function: arity mismatch");
    return fn_(z);
}

double ScalarFunction::operator()(const Vector& z) const {
    const DualVec d = constant_duals(z);
    return (*this)(DualSpan(d)).real();
}

DualVec VectorFunction::operator()(DualSpan z) const {
    require_dims(z.size() == arity_, "vector function: arity mismatch");
    DualVec r = fn_(z);
    require_dims(r.size() == out_, "vector function: output size mismatch");
    return r;
}

Vector VectorFunction::operator()(const Vector& z) const {
    const DualVec d = constant_duals(z);
    const DualVec r = (*this)(DualSpan(d));
    Vector out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i].real();
    return out;
}

DualVec MatrixFunction::operator()(DualSpan z) const {
    require_dims(z.size() == arity_, "matrix function: arity mismatch");
    DualVec r = fn_(z);
    require_dims(r.size() == rows_ * cols_, "matrix function: output size mismatch");
    return r;
}

Matrix MatrixFunction::operator()(const Vector& z) const {
    const DualVec d = constant_duals(z);
    const DualVec r = (*this)(DualSpan(d));
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = r[i * cols_ + j].real();
    return out;
}

DualVec constant_duals(const Vector& z) {
    if (!all_finite(z)) throw NonFiniteError("non-finite evaluation point");
    return DualVec(z.begin(), z.end());
}

int max_depth(DualSpan z) {
    int d = 0;
    for (const Dual& v : z) d = std::max(d, v.depth());
    return d;
}

ValueAndDerivative value_and_derivative_along(const ScalarFunction& f, DualSpan z, DualSpan d) {
    require_dims(z.size() == d.size(), "directional derivative: size mismatch");
    const int level = std::max(max_depth(z), max_depth(d));
    DualVec seeded(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) seeded[i] = Dual::lift(z[i], d[i], level);
    const Dual r = f(DualSpan(seeded));
    return {r.value_part(level), r.derivative_part(level)};
}

Vector gradient(const ScalarFunction& f, const Vector& z) {
    require_dims(z.size() == f.arity(), "gradient: arity mismatch");
    DualVec base = constant_duals(z);
    Vector g(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        DualVec seeded = base;
        seeded[i] = Dual::variable(z[i], 1.0, 0);
        g[i] = f(DualSpan(seeded)).coeff(1);
    }
    return g;
}

double directional_derivative(const ScalarFunction& f, const Vector& z, const Vector& d) {
    require_dims(z.size() == f.arity() && d.size() == z.size(), "directional derivative: arity mismatch");
    if (!all_finite(d)) throw NonFiniteError("non-finite direction");
    const DualVec zd = constant_duals(z);
    const DualVec dd(d.begin(), d.end());
    return value_and_derivative_along(f, zd, dd).derivative.real();
}

}  // namespace adacbf
