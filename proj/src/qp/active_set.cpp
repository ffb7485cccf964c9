#include "active_set.hpp"

#include <algorithm>
#include <cmath>

#include "adacbf/numerics/kernels.hpp"

namespace adacbf::detail {

bool solve_kkt(const Matrix& H, const Vector& g, const Matrix& A, const std::vector<std::size_t>& working,
               Vector& step, Vector& mu) {
    const std::size_t d = H.rows();
    const std::size_t k = working.size();
    Matrix K(d + k, d + k);
    Vector rhs(d + k);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) K(i, j) = H(i, j);
        rhs[i] = -g[i];
    }
    for (std::size_t r = 0; r < k; ++r) {
        const double* a = A.row(working[r]);
        for (std::size_t j = 0; j < d; ++j) {
            K(d + r, j) = a[j];
            K(j, d + r) = a[j];
        }
    }
    const LuFactor lu(K);
    if (lu.singular()) return false;
    const Vector sol = lu.solve_refined(rhs);
    if (!all_finite(sol)) return false;
    step = Vector(d);
    mu = Vector(k);
    for (std::size_t i = 0; i < d; ++i) step[i] = sol[i];
    for (std::size_t r = 0; r < k; ++r) mu[r] = sol[d + r];
    return true;
}

std::vector<std::size_t> independent_active_rows(const Matrix& A, const Vector& b, const Vector& x, double tol) {
    const std::size_t d = A.cols();
    std::vector<Vector> basis;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        if (basis.size() == d) break;
        const double slack = b[i] - kernels::dot(A.row(i), x.data(), d);
        if (slack > tol) continue;
        Vector r(std::vector<double>(A.row(i), A.row(i) + d));
        const double n0 = norm2(r);
        if (n0 == 0.0) continue;
        for (const Vector& q : basis) kernels::axpy(-dot(q, r), q.data(), r.data(), d);
        const double n = norm2(r);
        if (n <= 1e-9 * n0) continue;
        basis.push_back((1.0 / n) * r);
        out.push_back(i);
    }
    return out;
}

ActiveSetResult primal_active_set(const Matrix& H, const Vector& g0, const Matrix& A, const Vector& b, Vector x,
                                  std::vector<std::size_t> working, int max_iter) {
    const std::size_t d = H.rows();
    ActiveSetResult res;
    std::vector<char> in_w(A.rows(), 0);
    for (std::size_t i : working) in_w[i] = 1;
    bool at_subproblem_min = false;
    Vector p, mu;
    for (int it = 0; it < max_iter; ++it) {
        res.iterations = it + 1;
        Vector g = H * x;
        g += g0;
        if (!solve_kkt(H, g, A, working, p, mu)) break;
        const double pn = norm_inf(p);
        if (at_subproblem_min || pn <= 1e-13 * (1.0 + norm_inf(x))) {
            std::size_t worst = working.size();
            double worst_mu = -1e-12;
            for (std::size_t r = 0; r < working.size(); ++r) {
                // Strictly more negative wins, so ties keep the lowest row index.
                if (mu[r] < worst_mu ||
                    (worst < working.size() && mu[r] == worst_mu && working[r] < working[worst])) {
                    worst_mu = mu[r];
                    worst = r;
                }
            }
            if (worst == working.size()) {
                res.x = std::move(x);
                res.working = std::move(working);
                res.mu = mu;
                res.status = QpStatus::optimal;
                return res;
            }
            in_w[working[worst]] = 0;
            working.erase(working.begin() + static_cast<std::ptrdiff_t>(worst));
            at_subproblem_min = false;
            continue;
        }
        double alpha = 1.0;
        std::size_t blocking = A.rows();
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (in_w[i]) continue;
            const double ap = kernels::dot(A.row(i), p.data(), d);
            if (ap <= 1e-12 * pn) continue;
            const double slack = std::max(0.0, b[i] - kernels::dot(A.row(i), x.data(), d));
            const double a = slack / ap;
            if (a < alpha) {
                alpha = a;
                blocking = i;
            }
        }
        kernels::axpy(alpha, p.data(), x.data(), d);
        if (blocking < A.rows()) {
            working.push_back(blocking);
            in_w[blocking] = 1;
            at_subproblem_min = false;
        } else {
            at_subproblem_min = true;
        }
    }
    res.x = std::move(x);
    res.working = std::move(working);
    res.mu = mu.size() == res.working.size() ? mu : Vector(res.working.size());
    res.status = QpStatus::max_iterations;
    return res;
}

}  // namespace adacbf::detail
