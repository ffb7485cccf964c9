#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace adacbf {

// Nested forward-mode dual number stored flat. A depth-k value has 2^k
// coefficients indexed by subsets of {eps_0..eps_{k-1}}; bit j of the index
// marks eps_j (eps_j^2 = 0). Nesting depth k is the differentiation order.
// Lower-depth values embed into higher depth by zero padding.
class Dual {
public:
    static constexpr int kCapacityDepth = 5;
    static constexpr std::size_t kCapacity = std::size_t{1} << kCapacityDepth;

    Dual() : depth_(0) { c_[0] = 0.0; }
    Dual(double v) : depth_(0) { c_[0] = v; }  // NOLINT(google-explicit-constructor)

    // value + seed * eps_level (level must be below the capacity).
    static Dual variable(double value, double seed, int level);
    // value + eps_level * derivative, both of depth <= level.
    static Dual lift(const Dual& value, const Dual& derivative, int level);

    int depth() const { return depth_; }
    std::size_t size() const { return std::size_t{1} << depth_; }
    double real() const { return c_[0]; }
    double coeff(std::size_t mask) const { return mask < size() ? c_[mask] : 0.0; }

    // Split w.r.t. eps_level, which must be the outermost level (or absent).
    Dual value_part(int level) const;
    Dual derivative_part(int level) const;

    Dual& operator+=(const Dual& o);
    Dual& operator-=(const Dual& o);
    Dual& operator*=(const Dual& o);
    Dual& operator/=(const Dual& o);

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
    friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
    friend Dual operator-(Dual a) {
        for (std::size_t i = 0; i < a.size(); ++i) a.c_[i] = -a.c_[i];
        return a;
    }

    // Apply f around real(): sum_j taylor[j] * n^j, n the nilpotent part.
    // taylor[j] = f^(j)(real()) / j!, length depth()+1.
    Dual compose(const double* taylor) const;

private:
    void grow_to(int depth);
    void check_finite() const;

    std::array<double, kCapacity> c_;
    std::uint8_t depth_;
};

Dual exp(const Dual& a);
Dual log(const Dual& a);
Dual sqrt(const Dual& a);
Dual pow(const Dual& a, double e);
Dual sin(const Dual& a);
Dual cos(const Dual& a);
// Right derivative at 0.
Dual abs(const Dual& a);
// sgn(0) = 0; derivative zero everywhere it is taken.
Dual sgn(const Dual& a);
Dual square(const Dual& a);

}  // namespace adacbf
