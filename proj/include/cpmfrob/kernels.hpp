#pragma once

#include <complex>
#include <cstddef>

// Low-level arithmetic kernels on interleaved complex<double> buffers.
// Scalar reference implementations always exist; an AVX2 variant is selected
// at runtime when the CPU supports it (override with CPMFROB_NO_SIMD=1).
namespace cpmfrob::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

Backend active_backend();

// Test hook: force a specific backend. Throws if the backend is unavailable.
void force_backend(Backend b);
void reset_backend();

// c (m x n) = a (m x k) * b (k x n), all row-major dense. c is overwritten.
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);

// sum_i |a[i] - b[i]|^2
double frob_dist_sq(const cplx* a, const cplx* b, std::size_t n);

// sum_i conj(a[i]) * b[i]
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);

// y += alpha * x
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);

// Reference (scalar) entry points, kept callable for equivalence tests.
namespace scalar {
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
double frob_dist_sq(const cplx* a, const cplx* b, std::size_t n);
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
}  // namespace scalar

#ifdef CPMFROB_HAVE_AVX2
namespace avx2 {
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
double frob_dist_sq(const cplx* a, const cplx* b, std::size_t n);
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace cpmfrob::kernels
