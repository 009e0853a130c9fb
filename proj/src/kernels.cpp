#include "cpmfrob/kernels.hpp"

#include <cstdlib>

#include "cpmfrob/errors.hpp"

namespace cpmfrob::kernels {

namespace {

bool avx2_available() {
#ifdef CPMFROB_HAVE_AVX2
    if (const char* env = std::getenv("CPMFROB_NO_SIMD"); env && env[0] == '1') return false;
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect() { return avx2_available() ? Backend::avx2 : Backend::scalar; }

Backend g_backend = detect();

}  // namespace

Backend active_backend() { return g_backend; }

void force_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_available()) throw Error("avx2 backend unavailable on this cpu");
    g_backend = b;
}

void reset_backend() { g_backend = detect(); }

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
#ifdef CPMFROB_HAVE_AVX2
    if (g_backend == Backend::avx2) return avx2::matmul(a, b, c, m, k, n);
#endif
    scalar::matmul(a, b, c, m, k, n);
}

double frob_dist_sq(const cplx* a, const cplx* b, std::size_t n) {
#ifdef CPMFROB_HAVE_AVX2
    if (g_backend == Backend::avx2) return avx2::frob_dist_sq(a, b, n);
#endif
    return scalar::frob_dist_sq(a, b, n);
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
#ifdef CPMFROB_HAVE_AVX2
    if (g_backend == Backend::avx2) return avx2::dot_conj(a, b, n);
#endif
    return scalar::dot_conj(a, b, n);
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
#ifdef CPMFROB_HAVE_AVX2
    if (g_backend == Backend::avx2) return avx2::axpy(alpha, x, y, n);
#endif
    scalar::axpy(alpha, x, y, n);
}

}  // namespace cpmfrob::kernels
