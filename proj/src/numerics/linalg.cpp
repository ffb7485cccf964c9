#include "adacbf/numerics/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "adacbf/numerics/errors.hpp"
#include "adacbf/numerics/kernels.hpp"

namespace adacbf {

Vector& Vector::operator+=(const Vector& o) {
    require_dims(size() == o.size(), "vector add: size mismatch");
    kernels::axpy(1.0, o.data(), data(), size());
    return *this;
}

Vector& Vector::operator-=(const Vector& o) {
    require_dims(size() == o.size(), "vector sub: size mismatch");
    kernels::axpy(-1.0, o.data(), data(), size());
    return *this;
}

Vector& Vector::operator*=(double s) {
    for (double& v : d_) v *= s;
    return *this;
}

Vector Vector::unit(std::size_t n, std::size_t i) {
    require_dims(i < n, "unit vector index out of range");
    Vector v(n, 0.0);
    v[i] = 1.0;
    return v;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(double s, Vector a) { return a *= s; }

double dot(const Vector& a, const Vector& b) {
    require_dims(a.size() == b.size(), "dot: size mismatch");
    return kernels::dot(a.data(), b.data(), a.size());
}

double norm_inf(const Vector& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

double norm2(const Vector& a) { return std::sqrt(kernels::dot(a.data(), a.data(), a.size())); }

bool all_finite(const Vector& a) {
    return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    d_.reserve(r_ * c_);
    for (const auto& r : rows) {
        require_dims(r.size() == c_, "matrix literal: ragged rows");
        d_.insert(d_.end(), r.begin(), r.end());
    }
}

Vector Matrix::column(std::size_t j) const {
    require_dims(j < c_, "column index out of range");
    Vector v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const Vector& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Vector operator*(const Matrix& a, const Vector& x) {
    require_dims(a.cols() == x.size(), "gemv: size mismatch");
    Vector y(a.rows());
    kernels::gemv(a.data(), a.rows(), a.cols(), x.data(), y.data());
    return y;
}

Vector transpose_times(const Matrix& a, const Vector& x) {
    require_dims(a.rows() == x.size(), "gemv_t: size mismatch");
    Vector y(a.cols());
    kernels::gemv_t(a.data(), a.rows(), a.cols(), x.data(), y.data());
    return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_dims(a.cols() == b.rows(), "gemm: size mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            kernels::axpy(a(i, k), b.row(k), c.row(i), b.cols());
    return c;
}

Matrix operator+(Matrix a, const Matrix& b) {
    require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "matrix add: size mismatch");
    kernels::axpy(1.0, b.data(), a.data(), a.rows() * a.cols());
    return a;
}

bool is_symmetric(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (std::abs(a(i, j) - a(j, i)) > tol) return false;
    return true;
}

LuFactor::LuFactor(Matrix a) : original_(a), lu_(std::move(a)) {
    require_dims(lu_.rows() == lu_.cols(), "LU: matrix must be square");
    const std::size_t n = lu_.rows();
    piv_.resize(n);
    for (std::size_t i = 0; i < n; ++i) piv_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu_(i, k)) > best) {
                best = std::abs(lu_(i, k));
                p = i;
            }
        }
        if (best == 0.0 || !std::isfinite(best)) {
            singular_ = true;
            return;
        }
        if (p != k) {
            std::swap_ranges(lu_.row(k), lu_.row(k) + n, lu_.row(p));
            std::swap(piv_[k], piv_[p]);
        }
        const double inv = 1.0 / lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = lu_(i, k) * inv;
            lu_(i, k) = l;
            if (l != 0.0) kernels::axpy(-l, lu_.row(k) + k + 1, lu_.row(i) + k + 1, n - k - 1);
        }
    }
}

Vector LuFactor::solve(const Vector& rhs) const {
    require_dims(rhs.size() == lu_.rows(), "LU solve: size mismatch");
    if (singular_) throw NonFiniteError("LU solve on singular matrix");
    const std::size_t n = lu_.rows();
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[piv_[i]];
    for (std::size_t i = 0; i < n; ++i) x[i] -= kernels::dot(lu_.row(i), x.data(), i);
    for (std::size_t i = n; i-- > 0;) {
        const double s = kernels::dot(lu_.row(i) + i + 1, x.data() + i + 1, n - i - 1);
        x[i] = (x[i] - s) / lu_(i, i);
    }
    return x;
}

Vector LuFactor::solve_refined(const Vector& rhs, int refinements) const {
    Vector x = solve(rhs);
    for (int k = 0; k < refinements; ++k) {
        Vector r = rhs - original_ * x;
        x += solve(r);
    }
    return x;
}

std::optional<Matrix> cholesky(const Matrix& a) {
    require_dims(a.rows() == a.cols(), "cholesky: matrix must be square");
    const std::size_t n = a.rows();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j) - kernels::dot(l.row(j), l.row(j), j);
        if (!(d > 0.0)) return std::nullopt;
        d = std::sqrt(d);
        l(j, j) = d;
        for (std::size_t i = j + 1; i < n; ++i)
            l(i, j) = (a(i, j) - kernels::dot(l.row(i), l.row(j), j)) / d;
    }
    return l;
}

}  // namespace adacbf
