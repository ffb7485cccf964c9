#include <cstdlib>
#include <cstring>

#include "adacbf/numerics/kernels.hpp"

namespace adacbf::kernels {

namespace {

struct Table {
    Isa isa;
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*gemv)(const double*, std::size_t, std::size_t, const double*, double*);
    void (*gemv_t)(const double*, std::size_t, std::size_t, const double*, double*);
};

bool force_scalar() {
    const char* v = std::getenv("ADACBF_FORCE_SCALAR");
    return v != nullptr && *v != '\0' && std::strcmp(v, "0") != 0;
}

Table pick() {
#if defined(ADACBF_HAVE_AVX2)
    if (!force_scalar() && avx2_available())
        return {Isa::avx2, avx2::dot, avx2::axpy, avx2::gemv, avx2::gemv_t};
#endif
    return {Isa::scalar, scalar::dot, scalar::axpy, scalar::gemv, scalar::gemv_t};
}

const Table& table() {
    static const Table t = pick();
    return t;
}

}  // namespace

bool avx2_available() {
#if defined(ADACBF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa active_isa() { return table().isa; }

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }

void axpy(double alpha, const double* x, double* y, std::size_t n) { table().axpy(alpha, x, y, n); }

void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    table().gemv(a, rows, cols, x, y);
}

void gemv_t(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    table().gemv_t(a, rows, cols, x, y);
}

}  // namespace adacbf::kernels
