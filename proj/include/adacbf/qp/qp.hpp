#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "adacbf/numerics/linalg.hpp"

namespace adacbf {

// min 1/2 w'Hw + F'w  s.t.  A w <= b
struct QpProblem {
    Matrix H;
    Vector F;
    Matrix A;
    Vector b;

    std::size_t dim() const { return F.size(); }
    std::size_t rows() const { return b.size(); }
};

enum class QpStatus { optimal, infeasible, max_iterations };
const char* to_string(QpStatus s);

struct QpSolution {
    Vector w;
    double objective = 0.0;
    Vector multipliers;              // one per row, >= 0
    std::vector<std::size_t> active_set;  // sorted row indices
    QpStatus status = QpStatus::max_iterations;
    Vector certificate;              // y >= 0, A'y ~ 0, b'y < 0 when infeasible
    int iterations = 0;
};

struct QpOptions {
    double tol = 1e-9;
    int max_iter = 200;
    double regularization = 1e-9;  // rho added to diag(H)
};

struct QpError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Primal active-set method. Variables are rescaled by 1/sqrt(H_jj) and rows
// normalized internally; results are reported in the original units.
QpSolution solve(const QpProblem& p, const QpOptions& options = {});

struct KktResiduals {
    double stationarity = 0.0;
    double primal = 0.0;
    double dual = 0.0;
    double complementarity = 0.0;
};

// Residuals relative to the magnitude of the terms they combine.
KktResiduals kkt_residuals(const QpProblem& p, const QpSolution& s);
bool verify_kkt(const QpProblem& p, const QpSolution& s, double tol);
double objective_value(const QpProblem& p, const Vector& w);

}  // namespace adacbf
