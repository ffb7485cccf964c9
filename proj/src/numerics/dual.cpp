#include "adacbf/numerics/dual.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adacbf/numerics/errors.hpp"

namespace adacbf {

namespace {

std::size_t width(int depth) { return std::size_t{1} << depth; }

}  // namespace

void Dual::grow_to(int depth) {
    if (depth <= depth_) return;
    std::fill(c_.begin() + static_cast<std::ptrdiff_t>(size()), c_.begin() + static_cast<std::ptrdiff_t>(width(depth)), 0.0);
    depth_ = static_cast<std::uint8_t>(depth);
}

void Dual::check_finite() const {
    for (std::size_t i = 0; i < size(); ++i)
        if (!std::isfinite(c_[i])) throw NonFiniteError("non-finite value in dual arithmetic");
}

Dual Dual::variable(double value, double seed, int level) {
    if (level < 0 || level >= kCapacityDepth)
        throw DepthError("dual level " + std::to_string(level) + " exceeds capacity");
    Dual d;
    d.grow_to(level + 1);
    d.c_[0] = value;
    d.c_[width(level)] = seed;
    d.check_finite();
    return d;
}

Dual Dual::lift(const Dual& value, const Dual& derivative, int level) {
    if (level < 0 || level >= kCapacityDepth)
        throw DepthError("dual level " + std::to_string(level) + " exceeds capacity");
    if (value.depth() > level || derivative.depth() > level)
        throw DepthError("lift: operand already uses the requested level");
    Dual d;
    d.grow_to(level + 1);
    const std::size_t half = width(level);
    for (std::size_t i = 0; i < half; ++i) {
        d.c_[i] = value.coeff(i);
        d.c_[half + i] = derivative.coeff(i);
    }
    return d;
}

Dual Dual::value_part(int level) const {
    if (depth_ <= level) return *this;
    if (depth_ != level + 1) throw DepthError("value_part: level is not outermost");
    Dual d;
    d.depth_ = static_cast<std::uint8_t>(level);
    std::copy_n(c_.begin(), width(level), d.c_.begin());
    return d;
}

Dual Dual::derivative_part(int level) const {
    if (depth_ <= level) return Dual(0.0);
    if (depth_ != level + 1) throw DepthError("derivative_part: level is not outermost");
    Dual d;
    d.depth_ = static_cast<std::uint8_t>(level);
    const std::size_t half = width(level);
    std::copy_n(c_.begin() + static_cast<std::ptrdiff_t>(half), half, d.c_.begin());
    return d;
}

Dual& Dual::operator+=(const Dual& o) {
    grow_to(o.depth_);
    for (std::size_t i = 0; i < o.size(); ++i) c_[i] += o.c_[i];
    check_finite();
    return *this;
}

Dual& Dual::operator-=(const Dual& o) {
    grow_to(o.depth_);
    for (std::size_t i = 0; i < o.size(); ++i) c_[i] -= o.c_[i];
    check_finite();
    return *this;
}

Dual& Dual::operator*=(const Dual& o) {
    if (o.depth_ == 0) {
        const double s = o.c_[0];
        for (std::size_t i = 0; i < size(); ++i) c_[i] *= s;
        check_finite();
        return *this;
    }
    if (depth_ == 0) {
        const double s = c_[0];
        *this = o;
        for (std::size_t i = 0; i < size(); ++i) c_[i] *= s;
        check_finite();
        return *this;
    }
    const int depth = std::max(depth_, o.depth_);
    const std::size_t n = width(depth);
    std::array<double, kCapacity> out;
    for (std::size_t s = 0; s < n; ++s) {
        // Subset convolution: sum over t subset of s of a[t] b[s \ t].
        double acc = 0.0;
        std::size_t t = s;
        while (true) {
            acc += coeff(t) * o.coeff(s ^ t);
            if (t == 0) break;
            t = (t - 1) & s;
        }
        out[s] = acc;
    }
    std::copy_n(out.begin(), n, c_.begin());
    depth_ = static_cast<std::uint8_t>(depth);
    check_finite();
    return *this;
}

Dual& Dual::operator/=(const Dual& o) {
    const double a0 = o.real();
    if (a0 == 0.0) throw NonFiniteError("division by zero in dual arithmetic");
    double t[kCapacityDepth + 1];
    double p = 1.0 / a0;
    for (int j = 0; j <= o.depth(); ++j) {
        t[j] = p;
        p *= -1.0 / a0;
    }
    return *this *= o.compose(t);
}

Dual Dual::compose(const double* taylor) const {
    Dual nil = *this;
    nil.c_[0] = 0.0;
    Dual r(taylor[depth_]);
    for (int j = depth_ - 1; j >= 0; --j) {
        r *= nil;
        r += Dual(taylor[j]);
    }
    r.check_finite();
    return r;
}

Dual exp(const Dual& a) {
    double t[Dual::kCapacityDepth + 1];
    const double e = std::exp(a.real());
    double fact = 1.0;
    for (int j = 0; j <= a.depth(); ++j) {
        if (j > 0) fact *= j;
        t[j] = e / fact;
    }
    return a.compose(t);
}

Dual log(const Dual& a) {
    const double x = a.real();
    if (!(x > 0.0)) throw NonFiniteError("log of non-positive value");
    double t[Dual::kCapacityDepth + 1];
    t[0] = std::log(x);
    // d^j/dx^j log x / j! = (-1)^(j-1) / (j x^j)
    double xp = 1.0;
    for (int j = 1; j <= a.depth(); ++j) {
        xp *= x;
        t[j] = ((j % 2) ? 1.0 : -1.0) / (j * xp);
    }
    return a.compose(t);
}

Dual pow(const Dual& a, double e) {
    const double x = a.real();
    double t[Dual::kCapacityDepth + 1];
    // Binomial-series coefficients C(e, j) x^(e-j).
    double binom = 1.0;
    for (int j = 0; j <= a.depth(); ++j) {
        if (j > 0) binom *= (e - (j - 1)) / j;
        t[j] = binom == 0.0 ? 0.0 : binom * std::pow(x, e - j);
    }
    return a.compose(t);
}

Dual sqrt(const Dual& a) { return pow(a, 0.5); }

Dual sin(const Dual& a) {
    const double s = std::sin(a.real()), c = std::cos(a.real());
    const double cyc[4] = {s, c, -s, -c};
    double t[Dual::kCapacityDepth + 1];
    double fact = 1.0;
    for (int j = 0; j <= a.depth(); ++j) {
        if (j > 0) fact *= j;
        t[j] = cyc[j % 4] / fact;
    }
    return a.compose(t);
}

Dual cos(const Dual& a) {
    const double s = std::sin(a.real()), c = std::cos(a.real());
    const double cyc[4] = {c, -s, -c, s};
    double t[Dual::kCapacityDepth + 1];
    double fact = 1.0;
    for (int j = 0; j <= a.depth(); ++j) {
        if (j > 0) fact *= j;
        t[j] = cyc[j % 4] / fact;
    }
    return a.compose(t);
}

Dual sgn(const Dual& a) {
    const double x = a.real();
    return Dual(x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0));
}

Dual abs(const Dual& a) { return a.real() < 0.0 ? -a : a; }

Dual square(const Dual& a) { return a * a; }

}  // namespace adacbf
