#pragma once

#include <cstddef>

// Dense level-1/2 kernels. A scalar reference implementation always exists;
// AVX2+FMA variants are compiled on x86-64 and picked at runtime.
namespace adacbf::kernels {

enum class Isa { scalar, avx2 };

// Set ADACBF_FORCE_SCALAR=1 to pin the scalar path.
Isa active_isa();
const char* isa_name(Isa isa);
bool avx2_available();

double dot(const double* a, const double* b, std::size_t n);
// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);
// y = A x, A row-major rows x cols
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
// y = A^T x, A row-major rows x cols, y has cols entries
void gemv_t(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void gemv_t(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace scalar

#if defined(ADACBF_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void gemv_t(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace avx2
#endif

}  // namespace adacbf::kernels
