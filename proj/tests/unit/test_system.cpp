#include <doctest.h>

#include <cmath>

#include "adacbf/acc/acc.hpp"
#include "adacbf/acc/sacc.hpp"
#include "adacbf/numerics/errors.hpp"
#include "adacbf/system/augmented_system.hpp"
#include "adacbf/system/noise.hpp"

using namespace adacbf;

namespace {
AffineControlSystem double_integrator() {
    VectorFunction f(2, 2, [](DualSpan x) { return DualVec{x[1], Dual(0.0)}; });
    MatrixFunction g(2, 2, 1, [](DualSpan) { return DualVec{Dual(0.0), Dual(1.0)}; });
    return AffineControlSystem(2, 1, f, g);
}
}  // namespace

TEST_SUITE("system") {

TEST_CASE("evaluate_rhs examples") {
    const AccParams p;
    const Vector r = evaluate_rhs(acc_system(p), Vector{0, 20, 100}, Vector{0});
    CHECK(r[0] == 20.0);
    CHECK(r[1] == doctest::Approx(-200.1 / 1650.0).epsilon(1e-14));
    CHECK(r[2] == doctest::Approx(13.89));

    VectorFunction zero(2, 2, [](DualSpan) { return DualVec{Dual(0.0), Dual(0.0)}; });
    MatrixFunction g(2, 2, 1, [](DualSpan) { return DualVec{Dual(0.0), Dual(1.0)}; });
    CHECK(evaluate_rhs(AffineControlSystem(2, 1, zero, g), Vector{3, 4}, Vector{0}) == Vector{0, 0});

    CHECK(evaluate_rhs(double_integrator(), Vector{0, 1}, Vector{2}) == Vector{1, 2});
    CHECK_THROWS_AS(evaluate_rhs(double_integrator(), Vector{0, 1, 2}, Vector{2}), DimensionError);
    CHECK_THROWS_AS(evaluate_rhs(double_integrator(), Vector{0, 1}, Vector{2, 3}), DimensionError);
}

TEST_CASE("augment: ACC gets one length-1 chain") {
    const AccParams p;
    const AugmentedSystem aug = augment(acc_system(p), {1});
    CHECK(aug.n() == 4);
    CHECK(aug.q() == 2);
    CHECK(aug.chain_head(0) == 3);
    const Vector z{0, 20, 100, 0.1};
    const Vector r = aug.rhs(z, Vector{0, 0.7});
    CHECK(r[3] == 0.7);
}

TEST_CASE("augment: length-2 chain is a double integrator") {
    const AugmentedSystem aug = augment(double_integrator(), {2});
    CHECK(aug.n() == 4);
    CHECK(aug.q() == 2);
    const Vector r = aug.rhs(Vector{0, 0, 1.0, -0.5}, Vector{0, 3.0});
    CHECK(r[2] == -0.5);
    CHECK(r[3] == 3.0);
}

TEST_CASE("augment with no chains reproduces the base rhs") {
    const AccParams p;
    const auto base = acc_system(p);
    const AugmentedSystem aug = augment(base, {});
    const Vector x{5, 18, 60};
    CHECK(aug.rhs(x, Vector{250}) == evaluate_rhs(base, x, Vector{250}));
    CHECK_THROWS(augment(base, {0}));
}

TEST_CASE("augmented x-block with nu = 0 equals the base rhs") {
    const AccParams p;
    const auto base = acc_system(p);
    const AugmentedSystem aug = augment(base, {2, 1});
    const Vector z{1, 15, 70, 0.3, -0.2, 0.8};
    const Vector r = aug.rhs(z, Vector{-300, 0, 0});
    const Vector rb = evaluate_rhs(base, Vector{1, 15, 70}, Vector{-300});
    for (std::size_t i = 0; i < 3; ++i) CHECK(r[i] == rb[i]);
}

TEST_CASE("each chain output has relative degree equal to its length") {
    const AugmentedSystem aug = augment(double_integrator(), {3, 1});
    // p at head(0): L_G L_F^k p = 0 for k < 2, = 1 at k = 2.
    for (std::size_t k = 0; k < 2; ++k) {
        const std::size_t head = aug.chain_head(k);
        const int len = aug.chains()[k];
        const ScalarFunction y(aug.n(), [head](DualSpan z) { return z[head]; });
        ScalarFunction cur = y;
        const Vector z{0.3, -1, 0.5, 0.2, -0.1, 0.7};
        for (int order = 0; order < len; ++order) {
            const Vector grad = gradient(cur, z);
            const Matrix G = aug.input_matrix()(z);
            const double lg = grad[aug.chain_tail(k)] * G(aug.chain_tail(k), aug.nu_column(k));
            const Vector lgall = transpose_times(G, grad);
            if (order < len - 1) {
                CHECK(norm_inf(lgall) == 0.0);
            } else {
                CHECK(lg == 1.0);
                CHECK(lgall[aug.nu_column(k)] == 1.0);
            }
            const auto drift = aug.drift();
            const ScalarFunction prev = cur;
            cur = ScalarFunction(aug.n(), [prev, drift](DualSpan zz) {
                const DualVec F = drift(zz);
                return value_and_derivative_along(prev, zz, DualSpan(F)).derivative;
            });
        }
    }
}

TEST_CASE("input bounds") {
    const auto b = InputBounds::constant(Vector{-1}, Vector{2});
    CHECK(b.lower({}) == Vector{-1});
    CHECK(b.upper({}) == Vector{2});
    const InputBounds bad(1, [](const BoundContext&) { return Vector{3}; }, [](const BoundContext&) { return Vector{2}; });
    CHECK_THROWS_AS(bad.upper({}), ConfigError);
}

TEST_CASE("noise: zero amplitude is silent") {
    const NoiseModel m(Vector{0, 0, 0}, 1);
    CHECK_FALSE(m.active());
    CHECK(sample_noise(m, 3.3) == Vector{0, 0, 0});
}

TEST_CASE("noise: same seed gives the same samples") {
    const NoiseModel a(Vector{2, 0.45, 0}, 42), b(Vector{2, 0.45, 0}, 42), c(Vector{2, 0.45, 0}, 43);
    for (double t : {0.0, 0.01, 1.2345, 29.9}) CHECK(sample_noise(a, t) == sample_noise(b, t));
    CHECK(sample_noise(a, 1.0) != sample_noise(c, 1.0));
    // Held over an interval.
    CHECK(sample_noise(a, 0.1001) == sample_noise(a, 0.1005));
}

TEST_CASE("noise: uniform statistics") {
    const NoiseModel m(Vector{2, 0.45, 0}, 7);
    const int n = 10000;
    double s0 = 0, s1 = 0, mx0 = 0, mx1 = 0;
    for (int k = 0; k < n; ++k) {
        const Vector w = m.sample_interval(static_cast<std::uint64_t>(k));
        s0 += w[0];
        s1 += w[1];
        mx0 = std::max(mx0, std::abs(w[0]));
        mx1 = std::max(mx1, std::abs(w[1]));
        CHECK(w[2] == 0.0);
    }
    CHECK(mx0 <= 2.0);
    CHECK(mx1 <= 0.45);
    // sigma of a uniform mean: a / sqrt(3 n)
    CHECK(std::abs(s0 / n) < 3 * 2.0 / std::sqrt(3.0 * n));
    CHECK(std::abs(s1 / n) < 3 * 0.45 / std::sqrt(3.0 * n));
    CHECK_THROWS_AS(NoiseModel(Vector{-1.0}, 0), ConfigError);
}

TEST_CASE("resistance examples") {
    const AccParams p;
    CHECK(resistance(p, 20.0) == doctest::Approx(200.1).epsilon(1e-14));
    CHECK(resistance(p, 0.0) == 0.0);
    CHECK(resistance(p, 13.89) == doctest::Approx(0.1 + 5.0 * 13.89 + 0.25 * 13.89 * 13.89).epsilon(1e-14));
}

}  // TEST_SUITE
