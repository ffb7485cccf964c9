#pragma once

#include <cstddef>
#include <vector>

#include "adacbf/numerics/linalg.hpp"
#include "adacbf/qp/qp.hpp"

namespace adacbf::detail {

struct ActiveSetResult {
    Vector x;
    std::vector<std::size_t> working;  // in insertion order
    Vector mu;                          // multipliers aligned with working
    QpStatus status = QpStatus::max_iterations;
    int iterations = 0;
};

// Primal active-set iterations for min 1/2 x'Hx + g'x, A x <= b from a
// (near) feasible x. H must be positive definite; rows should be normalized.
ActiveSetResult primal_active_set(const Matrix& H, const Vector& g, const Matrix& A, const Vector& b, Vector x,
                                  std::vector<std::size_t> working, int max_iter);

// Rows with slack below tol, kept only when linearly independent
// (lowest index first).
std::vector<std::size_t> independent_active_rows(const Matrix& A, const Vector& b, const Vector& x, double tol);

// Solve the equality-constrained KKT system on a fixed working set.
// Returns false when the system is singular.
bool solve_kkt(const Matrix& H, const Vector& g, const Matrix& A, const std::vector<std::size_t>& working,
               Vector& step, Vector& mu);

}  // namespace adacbf::detail
