#include "adacbf/qp/qp.hpp"

#include <algorithm>
#include <cmath>

#include "active_set.hpp"
#include "adacbf/numerics/errors.hpp"
#include "adacbf/numerics/kernels.hpp"

namespace adacbf {

namespace {

constexpr double kPhase1Reg = 1e-10;

void validate(const QpProblem& p) {
    const std::size_t d = p.dim();
    if (p.H.rows() != d || p.H.cols() != d) throw QpError("QP: H must be d x d");
    if (p.rows() > 0 && (p.A.rows() != p.rows() || p.A.cols() != d)) throw QpError("QP: A must be r x d");
    auto finite = [](const double* v, std::size_t n) {
        return std::all_of(v, v + n, [](double x) { return std::isfinite(x); });
    };
    if (!finite(p.H.data(), d * d) || !all_finite(p.F) || !all_finite(p.b) ||
        (p.rows() > 0 && !finite(p.A.data(), p.rows() * d)))
        throw QpError("QP: non-finite input");
    double hmax = 0.0;
    for (std::size_t i = 0; i < d * d; ++i) hmax = std::max(hmax, std::abs(p.H.data()[i]));
    if (!is_symmetric(p.H, 1e-12 * std::max(1.0, hmax))) throw QpError("QP: H is not symmetric");
    Matrix shifted = p.H;
    for (std::size_t i = 0; i < d; ++i) shifted(i, i) += 1e-8 * std::max(1.0, hmax);
    if (d > 0 && !cholesky(shifted)) throw QpError("QP: H is not positive semidefinite");
}

// Rows of A x <= b scaled to unit 2-norm; zero rows keep norm 1.
void normalize_rows(Matrix& A, Vector& b, Vector& norms) {
    norms = Vector(A.rows(), 1.0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        const double n = std::sqrt(kernels::dot(A.row(i), A.row(i), A.cols()));
        if (n > 0.0) {
            norms[i] = n;
            for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) /= n;
            b[i] /= n;
        }
    }
}

struct Phase1 {
    bool feasible = false;
    Vector w;
    Vector certificate;
    int iterations = 0;
    bool converged = false;
};

// min t + rho/2 (|w|^2 + t^2)  s.t.  A w - t <= b, t >= 0, in original units
// with normalized rows. Multipliers of an infeasible optimum form a Farkas
// certificate since A'y = -rho w ~ 0 and b'y = -t* - rho t*^2 ... < 0.
Phase1 phase_one(const QpProblem& p, const QpOptions& o) {
    const std::size_t d = p.dim();
    const std::size_t r = p.rows();
    Matrix A(r + 1, d + 1);
    Vector b(r + 1);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < d; ++j) A(i, j) = p.A(i, j);
        b[i] = p.b[i];
    }
    Vector norms;
    {
        Matrix Ar(r, d);
        Vector br(r);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < d; ++j) Ar(i, j) = p.A(i, j);
            br[i] = p.b[i];
        }
        normalize_rows(Ar, br, norms);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < d; ++j) A(i, j) = Ar(i, j);
            A(i, d) = -1.0;
            b[i] = br[i];
        }
    }
    A(r, d) = -1.0;
    b[r] = 0.0;
    Matrix H = Matrix::identity(d + 1);
    for (std::size_t i = 0; i < d + 1; ++i) H(i, i) = kPhase1Reg;
    Vector g(d + 1);
    g[d] = 1.0;
    Vector x(d + 1);
    double t0 = 0.0;
    for (std::size_t i = 0; i < r; ++i) t0 = std::max(t0, -b[i]);
    x[d] = t0;
    auto w0 = detail::independent_active_rows(A, b, x, 1e-14 * (1.0 + t0));
    auto res = detail::primal_active_set(H, g, A, b, x, w0, 4 * o.max_iter);

    Phase1 out;
    out.iterations = res.iterations;
    out.converged = res.status == QpStatus::optimal;
    out.w = Vector(d);
    for (std::size_t j = 0; j < d; ++j) out.w[j] = res.x[j];
    const double t = res.x[d];
    out.feasible = t <= o.tol;
    if (!out.feasible) {
        Vector y(r, 0.0);
        for (std::size_t k = 0; k < res.working.size(); ++k)
            if (res.working[k] < r) y[res.working[k]] = std::max(0.0, res.mu[k]) / norms[res.working[k]];
        const double ymax = norm_inf(y);
        if (ymax > 0.0) y *= 1.0 / ymax;
        out.certificate = y;
    }
    return out;
}

}  // namespace

const char* to_string(QpStatus s) {
    switch (s) {
        case QpStatus::optimal:
            return "optimal";
        case QpStatus::infeasible:
            return "infeasible";
        case QpStatus::max_iterations:
            return "max_iterations";
    }
    return "unknown";
}

double objective_value(const QpProblem& p, const Vector& w) { return 0.5 * dot(w, p.H * w) + dot(p.F, w); }

QpSolution solve(const QpProblem& p, const QpOptions& o) {
    validate(p);
    const std::size_t d = p.dim();
    const std::size_t r = p.rows();
    QpSolution sol;
    sol.multipliers = Vector(r);

    // Variable scaling w = D x so the curved part of H has unit diagonal.
    Vector D(d, 1.0);
    for (std::size_t j = 0; j < d; ++j)
        if (p.H(j, j) > 0.0) D[j] = 1.0 / std::sqrt(p.H(j, j));
    Matrix Hs(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) Hs(i, j) = D[i] * p.H(i, j) * D[j];
    Matrix Hr = Hs;
    for (std::size_t i = 0; i < d; ++i) Hr(i, i) += o.regularization;
    Vector Fs(d);
    for (std::size_t j = 0; j < d; ++j) Fs[j] = D[j] * p.F[j];
    Matrix As(r, d);
    Vector bs = p.b;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < d; ++j) As(i, j) = p.A(i, j) * D[j];
    Vector norms;
    normalize_rows(As, bs, norms);

    Vector x(d);
    std::vector<std::size_t> w0;
    if (r > 0) {
        const Phase1 ph = phase_one(p, o);
        sol.iterations += ph.iterations;
        if (!ph.feasible) {
            sol.status = ph.converged ? QpStatus::infeasible : QpStatus::max_iterations;
            sol.certificate = ph.certificate;
            sol.w = ph.w;
            sol.objective = objective_value(p, sol.w);
            return sol;
        }
        for (std::size_t j = 0; j < d; ++j) x[j] = ph.w[j] / D[j];
        w0 = detail::independent_active_rows(As, bs, x, 1e-10);
    }

    auto res = detail::primal_active_set(Hr, Fs, As, bs, x, w0, o.max_iter);
    sol.iterations += res.iterations;
    sol.status = res.status;

    if (res.status == QpStatus::optimal) {
        // Polish on the final working set without regularization when that
        // system is nonsingular and the result stays primal/dual feasible.
        Vector step, mu;
        Vector g = Hs * res.x;
        g += Fs;
        if (detail::solve_kkt(Hs, g, As, res.working, step, mu)) {
            Vector xp = res.x + step;
            bool ok = all_finite(xp);
            for (std::size_t k = 0; ok && k < mu.size(); ++k) ok = mu[k] >= -1e-12;
            for (std::size_t i = 0; ok && i < r; ++i)
                ok = kernels::dot(As.row(i), xp.data(), d) <= bs[i] + o.tol;
            if (ok) {
                res.x = xp;
                res.mu = mu;
            }
        }
    }

    sol.w = Vector(d);
    for (std::size_t j = 0; j < d; ++j) sol.w[j] = D[j] * res.x[j];
    for (std::size_t k = 0; k < res.working.size(); ++k) {
        const std::size_t i = res.working[k];
        sol.multipliers[i] = std::max(0.0, res.mu[k]) / norms[i];
    }
    sol.active_set = res.working;
    std::sort(sol.active_set.begin(), sol.active_set.end());
    sol.objective = objective_value(p, sol.w);
    return sol;
}

KktResiduals kkt_residuals(const QpProblem& p, const QpSolution& s) {
    const std::size_t d = p.dim();
    const std::size_t r = p.rows();
    require_dims(s.w.size() == d && s.multipliers.size() == r, "kkt: solution size mismatch");
    KktResiduals k;
    const Vector& w = s.w;
    const Vector& lam = s.multipliers;
    for (std::size_t j = 0; j < d; ++j) {
        double res = p.F[j];
        double scale = std::abs(p.F[j]);
        for (std::size_t c = 0; c < d; ++c) {
            res += p.H(j, c) * w[c];
            scale += std::abs(p.H(j, c) * w[c]);
        }
        for (std::size_t i = 0; i < r; ++i) {
            res += p.A(i, j) * lam[i];
            scale += std::abs(p.A(i, j) * lam[i]);
        }
        k.stationarity = std::max(k.stationarity, std::abs(res) / (1.0 + scale));
    }
    const double lmax = norm_inf(lam);
    for (std::size_t i = 0; i < r; ++i) {
        double aw = 0.0, scale = std::abs(p.b[i]);
        for (std::size_t j = 0; j < d; ++j) {
            aw += p.A(i, j) * w[j];
            scale += std::abs(p.A(i, j) * w[j]);
        }
        const double viol = aw - p.b[i];
        k.primal = std::max(k.primal, std::max(0.0, viol) / (1.0 + scale));
        k.dual = std::max(k.dual, std::max(0.0, -lam[i]) / (1.0 + lmax));
        k.complementarity =
            std::max(k.complementarity, std::abs(lam[i] * viol) / ((1.0 + std::abs(lam[i])) * (1.0 + scale)));
    }
    return k;
}

bool verify_kkt(const QpProblem& p, const QpSolution& s, double tol) {
    if (s.status != QpStatus::optimal) return false;
    if (!all_finite(s.w) || !all_finite(s.multipliers)) return false;
    const KktResiduals k = kkt_residuals(p, s);
    return k.stationarity <= tol && k.primal <= tol && k.dual <= tol && k.complementarity <= tol;
}

}  // namespace adacbf
