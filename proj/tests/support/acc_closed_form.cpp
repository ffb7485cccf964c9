#include "acc_closed_form.hpp"

#include <cmath>

namespace adacbf::testing {

namespace {
double fr(const AccParams& p, double v) {
    const double s = v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0);
    return p.f0 * s + p.f1 * v + p.f2 * v * v;
}

ConstraintRow make(std::vector<double> c, double k, Sense s, const char* label) {
    return ConstraintRow{std::move(c), k, s, label};
}
}  // namespace

std::vector<double> acc_psi_closed_form(const AccParams& p, const Vector& z) {
    const double b = z[2] - z[0] - p.delta0;
    return {b, p.v_lead - z[1] + z[3] * b * b};
}

std::vector<ConstraintRow> acc_rows_closed_form(const AccParams& p, const Vector& z) {
    const double v = z[1], p1 = z[3], M = p.M;
    const double b = z[2] - z[0] - p.delta0;
    const double F = fr(p, v);
    const double e = v - p.v_des;
    const double psi1 = p.v_lead - v + p1 * b * b;
    std::vector<ConstraintRow> rows;
    rows.push_back(make({2 * e / M, -1, 0, 0, 0}, -2 * e * F / M + p.eps * e * e, Sense::leq, "speed_clf"));
    rows.push_back(make({-1 / M, 0, 0, 0, 0}, F / M + (p.v_max - v), Sense::geq, "v_max"));
    rows.push_back(make({1 / M, 0, 0, 0, 0}, -F / M + (v - p.v_min), Sense::geq, "v_min"));
    rows.push_back(make({-1 / M, 0, b * b, 0, psi1}, F / M + 2 * p1 * b * (p.v_lead - v), Sense::geq, "adacbf"));
    rows.push_back(make({0, 0, 1, 0, 0}, p1, Sense::geq, "p1_hocbf"));
    const double d = p1 - p.p1_star;
    rows.push_back(make({0, 0, 2 * d, -1, 0}, p.eps * d * d, Sense::leq, "p1_clf"));
    rows.push_back(make({0, 0, 0, 0, 1}, 0, Sense::geq, "p2_nonneg"));
    return rows;
}

QuadraticCost acc_cost_closed_form(const AccParams& p, const Vector& z) {
    QuadraticCost c(5);
    const double M2 = p.M * p.M;
    c.H(0, 0) = 2 / M2;
    c.F[0] = -2 * fr(p, z[1]) / M2;
    c.H(1, 1) = 2 * p.p_acc;
    c.F[2] = p.W1;
    c.H(3, 3) = 2 * p.P1;
    c.H(4, 4) = 2 * p.Q;
    c.F[4] = -2 * p.Q * p.p2_star;
    return c;
}

}  // namespace adacbf::testing
