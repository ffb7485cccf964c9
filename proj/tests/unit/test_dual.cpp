#include <doctest.h>

#include <cmath>
#include <random>

#include "adacbf/acc/acc.hpp"
#include "adacbf/numerics/diff.hpp"
#include "adacbf/numerics/dual.hpp"
#include "adacbf/numerics/errors.hpp"
#include "gradcheck.hpp"

using namespace adacbf;

namespace {
// x + eps_0 + ... + eps_{k-1}: the all-ones coefficient of f(x) is f^(k)(x).
Dual seeded(double x, int k) {
    Dual d(x);
    for (int l = 0; l < k; ++l) d = Dual::lift(d, Dual(1.0), l);
    return d;
}
std::size_t top(int k) { return (std::size_t{1} << k) - 1; }
}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("constants lift with zero derivative part") {
    const Dual c(3.5);
    CHECK(c.depth() == 0);
    const Dual x = Dual::variable(2.0, 1.0, 0);
    const Dual y = c * x + c;
    CHECK(y.real() == doctest::Approx(10.5));
    CHECK(y.coeff(1) == 3.5);
    CHECK(c.coeff(1) == 0.0);
}

TEST_CASE("second derivative of x^3 by depth-2 nesting") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    for (int t = 0; t < 50; ++t) {
        const double x = U(rng);
        const Dual d = seeded(x, 2);
        const Dual y = d * d * d;
        CHECK(std::abs(y.coeff(1) - 3 * x * x) <= 1e-12 * (1 + 3 * x * x));
        CHECK(std::abs(y.coeff(2) - 3 * x * x) <= 1e-12 * (1 + 3 * x * x));
        CHECK(std::abs(y.coeff(3) - 6 * x) <= 1e-12);
    }
}

TEST_CASE("elementary functions reproduce analytic derivatives to third order") {
    const double x = 0.7;
    const Dual d = seeded(x, 3);
    CHECK(exp(d).coeff(top(3)) == doctest::Approx(std::exp(x)).epsilon(1e-14));
    CHECK(sin(d).coeff(top(3)) == doctest::Approx(-std::cos(x)).epsilon(1e-14));
    CHECK(cos(d).coeff(top(3)) == doctest::Approx(std::sin(x)).epsilon(1e-14));
    CHECK(log(d).coeff(top(3)) == doctest::Approx(2.0 / (x * x * x)).epsilon(1e-13));
    CHECK(sqrt(d).coeff(top(3)) == doctest::Approx(3.0 / 8.0 * std::pow(x, -2.5)).epsilon(1e-13));
    CHECK(pow(d, 2.5).coeff(top(3)) == doctest::Approx(2.5 * 1.5 * 0.5 * std::pow(x, -0.5)).epsilon(1e-13));
    CHECK(square(d).coeff(3) == doctest::Approx(2.0));
    const Dual q = Dual(1.0) / d;
    CHECK(q.coeff(top(3)) == doctest::Approx(-6.0 / std::pow(x, 4)).epsilon(1e-13));
}

TEST_CASE("sum, product and chain rules hold at random points") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(0.2, 3.0);
    for (int t = 0; t < 100; ++t) {
        const double a = U(rng), b = U(rng);
        const Dual x = Dual::variable(a, 1.0, 0);
        const Dual y = Dual::variable(b, 1.0, 0);
        CHECK((x + y).coeff(1) == 2.0);
        CHECK((x * y).coeff(1) == doctest::Approx(a + b));
        CHECK((x / y).coeff(1) == doctest::Approx((b - a) / (b * b)));
        CHECK(exp(sin(x)).coeff(1) == doctest::Approx(std::exp(std::sin(a)) * std::cos(a)));
    }
}

TEST_CASE("sgn and abs conventions at zero") {
    const Dual z = Dual::variable(0.0, 1.0, 0);
    CHECK(sgn(z).real() == 0.0);
    CHECK(sgn(z).coeff(1) == 0.0);
    CHECK(abs(z).coeff(1) == 1.0);
    CHECK(abs(Dual::variable(-2.0, 1.0, 0)).coeff(1) == -1.0);
}

TEST_CASE("non-finite intermediates raise") {
    CHECK_THROWS_AS(log(Dual(-1.0)), NonFiniteError);
    CHECK_THROWS_AS(Dual(1.0) / Dual(0.0), NonFiniteError);
}

TEST_CASE("nesting beyond capacity raises") {
    CHECK_THROWS_AS(Dual::variable(1.0, 1.0, Dual::kCapacityDepth), DepthError);
}

TEST_CASE("gradient examples") {
    const ScalarFunction f(2, [](DualSpan z) { return z[0] * z[0] + z[1]; });
    CHECK(gradient(f, Vector{3, 1}) == Vector{6, 1});
    const ScalarFunction c(3, [](DualSpan) { return Dual(4.2); });
    CHECK(gradient(c, Vector{1, 2, 3}) == Vector{0, 0, 0});
    CHECK_THROWS_AS(gradient(f, Vector{1, 2, 3}), DimensionError);
}

TEST_CASE("directional derivative examples") {
    const ScalarFunction f(2, [](DualSpan z) { return z[0] * z[1]; });
    CHECK(directional_derivative(f, Vector{2, 5}, Vector{1, 0}) == 5.0);
    CHECK(directional_derivative(f, Vector{2, 5}, Vector{0, 0}) == 0.0);
}

TEST_CASE("directional derivative agrees with gradient dot direction") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    const ScalarFunction f(3, [](DualSpan z) { return exp(z[0]) * z[1] - sin(z[2] * z[0]) + z[1] * z[1] * z[2]; });
    for (int t = 0; t < 100; ++t) {
        const Vector z{U(rng), U(rng), U(rng)};
        const Vector d{U(rng), U(rng), U(rng)};
        const double lhs = directional_derivative(f, z, d);
        const double rhs = dot(gradient(f, z), d);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("polynomials up to degree 4 match central differences") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    const ScalarFunction f(3, [](DualSpan z) {
        return 2.0 * square(square(z[0])) - z[0] * z[1] * z[2] + 3.0 * z[2] * z[2] * z[1] + z[1] - 7.0;
    });
    for (int t = 0; t < 100; ++t) CHECK(testing::gradient_rel_error(f, Vector{U(rng), U(rng), U(rng)}) < 1e-6);
}

TEST_CASE("ACC psi1 gradient at the initial state") {
    AccParams p;
    const auto spec = acc_adacbf_spec(p, false);
    const AdaCbf ada(spec, augment(acc_system(p), chain_lengths(spec)));
    const ScalarFunction psi1 = ada.cascade().psi_function(1);
    const Vector z{0.0, 20.0, 100.0, 0.1};
    CHECK(testing::gradient_rel_error(psi1, z, 1e-5) < 1e-6);
    // Along the augmented drift at t = 0.
    const Vector F = ada.system().drift()(z);
    CHECK(std::abs(directional_derivative(psi1, z, F) - dot(gradient(psi1, z), F)) < 1e-12);
}

TEST_CASE("psi-cascade gradients match central differences at random states") {
    std::mt19937_64 rng(5);
    for (const auto& c : testing::cascade_gradient_cases()) {
        CAPTURE(c.name);
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) worst = std::max(worst, testing::gradient_rel_error(c.f, c.sample(rng)));
        CHECK(worst < 1e-6);
    }
}

}  // TEST_SUITE
