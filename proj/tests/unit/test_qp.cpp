#include <doctest.h>

#include <cmath>
#include <random>

#include "adacbf/qp/qp.hpp"
#include "qp_oracle.hpp"

using namespace adacbf;

namespace {
bool certificate_ok(const QpProblem& p, const QpSolution& s) {
    if (s.certificate.size() != p.rows()) return false;
    double btY = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        if (s.certificate[i] < 0.0) return false;
        btY += p.b[i] * s.certificate[i];
    }
    const Vector aty = transpose_times(p.A, s.certificate);
    return norm_inf(aty) <= 1e-6 * std::max(1.0, norm_inf(s.certificate)) && btY < 0.0;
}
}  // namespace

TEST_SUITE("qp") {

TEST_CASE("clamped scalar minimum") {
    const QpProblem p{Matrix{{2}}, Vector{-2}, Matrix{{1}}, Vector{0}};
    const auto s = solve(p);
    REQUIRE(s.status == QpStatus::optimal);
    CHECK(std::abs(s.w[0]) < 1e-12);
    CHECK(s.multipliers[0] == doctest::Approx(2.0));
    CHECK(std::abs(s.objective) < 1e-12);
    CHECK(s.active_set == std::vector<std::size_t>{0});
    CHECK(verify_kkt(p, s, 1e-9));
}

TEST_CASE("unconstrained problem") {
    const QpProblem p{Matrix{{4, 1}, {1, 3}}, Vector{1, 2}, Matrix(0, 2), Vector{}};
    const auto s = solve(p);
    REQUIRE(s.status == QpStatus::optimal);
    // -H^{-1} F
    CHECK(s.w[0] == doctest::Approx(-1.0 / 11.0));
    CHECK(s.w[1] == doctest::Approx(-7.0 / 11.0));
}

TEST_CASE("contradictory box is infeasible with a certificate") {
    const QpProblem p{Matrix{{1}}, Vector{0}, Matrix{{1}, {-1}}, Vector{-1, -1}};
    const auto s = solve(p);
    REQUIRE(s.status == QpStatus::infeasible);
    CHECK(s.certificate[0] == doctest::Approx(1.0));
    CHECK(s.certificate[1] == doctest::Approx(1.0));
    CHECK(certificate_ok(p, s));
}

TEST_CASE("semidefinite H with a linear term bounded by a row") {
    // min nu s.t. nu >= -0.3: the ACC-style zero curvature direction.
    const QpProblem p{Matrix{{0}}, Vector{2}, Matrix{{-1}}, Vector{0.3}};
    const auto s = solve(p);
    REQUIRE(s.status == QpStatus::optimal);
    CHECK(s.w[0] == doctest::Approx(-0.3));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(solve(QpProblem{Matrix{{1, 2}, {0, 1}}, Vector{0, 0}, Matrix(0, 2), Vector{}}), QpError);
    CHECK_THROWS_AS(solve(QpProblem{Matrix{{1, 0}, {0, -1}}, Vector{0, 0}, Matrix(0, 2), Vector{}}), QpError);
    CHECK_THROWS_AS(solve(QpProblem{Matrix{{1}}, Vector{NAN}, Matrix(0, 1), Vector{}}), QpError);
    CHECK_THROWS_AS(solve(QpProblem{Matrix{{1}}, Vector{0}, Matrix{{1, 2}}, Vector{0}}), QpError);
}

TEST_CASE("verify_kkt rejects perturbed solutions") {
    const QpProblem p{Matrix{{2, 0}, {0, 2}}, Vector{-2, -2}, Matrix{{1, 1}}, Vector{1}};
    const auto s = solve(p);
    REQUIRE(s.status == QpStatus::optimal);
    CHECK(verify_kkt(p, s, 1e-9));
    auto moved = s;
    moved.w[0] += 1e-2;
    CHECK_FALSE(verify_kkt(p, moved, 1e-9));
    auto negative = s;
    negative.multipliers[0] = -1.0;
    CHECK_FALSE(verify_kkt(p, negative, 1e-9));
}

TEST_CASE("ties enter in index order and results are deterministic") {
    const QpProblem p{Matrix{{2}}, Vector{-4}, Matrix{{1}, {1}, {2}}, Vector{1, 1, 2}};
    const auto a = solve(p);
    const auto b = solve(p);
    REQUIRE(a.status == QpStatus::optimal);
    CHECK(a.w[0] == doctest::Approx(1.0));
    CHECK(a.active_set == std::vector<std::size_t>{0});
    CHECK(a.w == b.w);
    CHECK(a.multipliers == b.multipliers);
}

TEST_CASE("matches the brute-force oracle on 500 random instances") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> D(1, 8), R(1, 12);
    int feasible = 0, infeasible = 0;
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const std::size_t d = D(rng), r = R(rng);
        const bool want_feasible = (t % 10) != 0 || r < 2;
        const QpProblem p = testing::random_qp(rng, d, r, want_feasible);
        const auto s = solve(p);
        const auto o = testing::brute_force_qp(p);
        if (o) {
            ++feasible;
            REQUIRE(s.status == QpStatus::optimal);
            const double err = std::abs(s.objective - o->objective) / std::max(1.0, std::abs(o->objective));
            worst = std::max(worst, err);
            CHECK(err <= 1e-6);
            CHECK(verify_kkt(p, s, 1e-8));
        } else {
            ++infeasible;
            REQUIRE(s.status == QpStatus::infeasible);
            CHECK(certificate_ok(p, s));
        }
    }
    MESSAGE("feasible=" << feasible << " infeasible=" << infeasible << " worst_rel_obj_err=" << worst);
    CHECK(infeasible > 0);
}

TEST_CASE("regularization moves the objective by at most rho |w|^2") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 100; ++t) {
        const QpProblem p = testing::random_qp(rng, 4, 6, true);
        QpOptions off;
        off.regularization = 0.0;
        const auto a = solve(p);
        const auto b = solve(p, off);
        REQUIRE(a.status == QpStatus::optimal);
        REQUIRE(b.status == QpStatus::optimal);
        CHECK(std::abs(a.objective - b.objective) <= 1e-9 * dot(b.w, b.w) + 1e-12 * std::max(1.0, std::abs(b.objective)));
    }
}

}  // TEST_SUITE
