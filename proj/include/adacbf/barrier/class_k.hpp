#pragma once

#include <functional>
#include <string>

#include "adacbf/numerics/dual.hpp"

namespace adacbf {

// alpha(s) with alpha(0) = 0, strictly increasing on [0, inf).
// linear: c s. quadratic: c s^2 (literal square, not odd-extended).
// power: c sgn(s) |s|^e. custom: user value plus derivative(s, order).
class ClassK {
public:
    enum class Kind { linear, quadratic, power, custom };
    using ValueFn = std::function<double(double)>;
    using DerivativeFn = std::function<double(double, int)>;

    static ClassK linear(double c = 1.0);
    static ClassK quadratic(double c = 1.0);
    static ClassK power(double c, double exponent);
    static ClassK custom(ValueFn value, DerivativeFn derivative, std::string name = "custom");

    Kind kind() const { return kind_; }
    double coefficient() const { return c_; }
    double exponent() const { return e_; }
    const std::string& name() const { return name_; }

    Dual operator()(const Dual& s) const;
    double operator()(double s) const;

private:
    ClassK(Kind kind, double c, double e, std::string name) : kind_(kind), c_(c), e_(e), name_(std::move(name)) {}

    Kind kind_;
    double c_;
    double e_;
    std::string name_;
    ValueFn value_;
    DerivativeFn derivative_;
};

}  // namespace adacbf
