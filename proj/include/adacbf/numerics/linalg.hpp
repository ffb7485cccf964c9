#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace adacbf {

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t n, double fill = 0.0) : d_(n, fill) {}
    Vector(std::initializer_list<double> v) : d_(v) {}
    explicit Vector(std::vector<double> v) : d_(std::move(v)) {}

    std::size_t size() const { return d_.size(); }
    bool empty() const { return d_.empty(); }
    double& operator[](std::size_t i) { return d_[i]; }
    double operator[](std::size_t i) const { return d_[i]; }
    double* data() { return d_.data(); }
    const double* data() const { return d_.data(); }
    auto begin() { return d_.begin(); }
    auto end() { return d_.end(); }
    auto begin() const { return d_.begin(); }
    auto end() const { return d_.end(); }
    const std::vector<double>& std() const { return d_; }

    bool operator==(const Vector& o) const = default;

    Vector& operator+=(const Vector& o);
    Vector& operator-=(const Vector& o);
    Vector& operator*=(double s);

    static Vector zeros(std::size_t n) { return Vector(n, 0.0); }
    static Vector unit(std::size_t n, std::size_t i);

private:
    std::vector<double> d_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector a);
double dot(const Vector& a, const Vector& b);
double norm_inf(const Vector& a);
double norm2(const Vector& a);
bool all_finite(const Vector& a);

// Row-major dense matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : r_(rows), c_(cols), d_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    double& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }
    double* row(std::size_t i) { return d_.data() + i * c_; }
    const double* row(std::size_t i) const { return d_.data() + i * c_; }
    double* data() { return d_.data(); }
    const double* data() const { return d_.data(); }

    bool operator==(const Matrix& o) const = default;

    Vector column(std::size_t j) const;
    Matrix transpose() const;
    static Matrix identity(std::size_t n);
    static Matrix diagonal(const Vector& d);

private:
    std::size_t r_ = 0;
    std::size_t c_ = 0;
    std::vector<double> d_;
};

Vector operator*(const Matrix& a, const Vector& x);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
// A^T x without forming A^T.
Vector transpose_times(const Matrix& a, const Vector& x);
bool is_symmetric(const Matrix& a, double tol);

// LU with partial pivoting (row swaps only, deterministic pivot rule:
// largest magnitude, lowest index on ties).
class LuFactor {
public:
    explicit LuFactor(Matrix a);
    bool singular() const { return singular_; }
    Vector solve(const Vector& rhs) const;
    // One step of iterative refinement against the original matrix.
    Vector solve_refined(const Vector& rhs, int refinements = 2) const;

private:
    Matrix original_;
    Matrix lu_;
    std::vector<std::size_t> piv_;
    bool singular_ = false;
};

// Lower Cholesky factor, or nullopt when a pivot is not positive.
std::optional<Matrix> cholesky(const Matrix& a);

}  // namespace adacbf
