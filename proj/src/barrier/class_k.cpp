#include "adacbf/barrier/class_k.hpp"

#include <cmath>

#include "adacbf/numerics/errors.hpp"

namespace adacbf {

ClassK ClassK::linear(double c) {
    if (!(c > 0.0)) throw ConfigError("class-K coefficient must be > 0");
    return ClassK(Kind::linear, c, 1.0, "linear");
}

ClassK ClassK::quadratic(double c) {
    if (!(c > 0.0)) throw ConfigError("class-K coefficient must be > 0");
    return ClassK(Kind::quadratic, c, 2.0, "quadratic");
}

ClassK ClassK::power(double c, double exponent) {
    if (!(c > 0.0) || !(exponent > 0.0)) throw ConfigError("power class-K needs c > 0 and exponent > 0");
    return ClassK(Kind::power, c, exponent, "power");
}

ClassK ClassK::custom(ValueFn value, DerivativeFn derivative, std::string name) {
    if (!value || !derivative) throw ConfigError("custom class-K needs value and derivative evaluators");
    if (std::abs(value(0.0)) > 1e-12) throw ConfigError("custom class-K must vanish at 0");
    double prev = value(0.0);
    for (int i = 1; i <= 100; ++i) {
        const double v = value(0.1 * i);
        if (!(v > prev)) throw ConfigError("custom class-K is not strictly increasing on [0, 10]");
        prev = v;
    }
    ClassK k(Kind::custom, 1.0, 0.0, std::move(name));
    k.value_ = std::move(value);
    k.derivative_ = std::move(derivative);
    return k;
}

Dual ClassK::operator()(const Dual& s) const {
    switch (kind_) {
        case Kind::linear:
            return c_ * s;
        case Kind::quadratic:
            return c_ * s * s;
        case Kind::power:
            return c_ * sgn(s) * pow(abs(s), e_);
        case Kind::custom: {
            double t[Dual::kCapacityDepth + 1];
            const double x = s.real();
            t[0] = value_(x);
            double fact = 1.0;
            for (int j = 1; j <= s.depth(); ++j) {
                fact *= j;
                t[j] = derivative_(x, j) / fact;
            }
            return s.compose(t);
        }
    }
    return Dual(0.0);
}

double ClassK::operator()(double s) const { return (*this)(Dual(s)).real(); }

}  // namespace adacbf
