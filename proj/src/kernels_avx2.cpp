#include "cpmfrob/kernels.hpp"

#ifdef CPMFROB_HAVE_AVX2

#include <immintrin.h>

#include <algorithm>

// Complex doubles are stored interleaved (re, im), so one __m256d holds two
// complex values. For c += a*b with a broadcast scalar:
//   even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br
// which is addsub(fmadd(ar, b, c), ai * swap_pairs(b)).
namespace cpmfrob::kernels::avx2 {

namespace {

inline __m256d cmul_acc(__m256d acc, __m256d ar, __m256d ai, __m256d bv) {
    const __m256d bs = _mm256_permute_pd(bv, 0b0101);
    return _mm256_addsub_pd(_mm256_fmadd_pd(ar, bv, acc), _mm256_mul_pd(ai, bs));
}

}  // namespace

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
    std::fill(c, c + m * n, cplx{});
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = a + i * k;
        double* crow = reinterpret_cast<double*>(c + i * n);
        for (std::size_t l = 0; l < k; ++l) {
            const cplx ail = arow[l];
            if (ail == cplx{}) continue;
            const __m256d ar = _mm256_set1_pd(ail.real());
            const __m256d ai = _mm256_set1_pd(ail.imag());
            const double* brow = reinterpret_cast<const double*>(b + l * n);
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                __m256d cv = _mm256_loadu_pd(crow + 2 * j);
                cv = cmul_acc(cv, ar, ai, _mm256_loadu_pd(brow + 2 * j));
                _mm256_storeu_pd(crow + 2 * j, cv);
            }
            if (j < n) {
                const cplx prod = ail * (b + l * n)[j];
                crow[2 * j] += prod.real();
                crow[2 * j + 1] += prod.imag();
            }
        }
    }
}

double frob_dist_sq(const cplx* a, const cplx* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    const std::size_t total = 2 * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= total; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < total; ++i) {
        const double d = pa[i] - pb[i];
        sum += d * d;
    }
    return sum;
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
    // re += ar*br + ai*bi ; im += ar*bi - ai*br
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d re_acc = _mm256_setzero_pd();
    __m256d im_acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t n2 = n & ~std::size_t{1};
    for (; i < n2; i += 2) {
        const __m256d av = _mm256_loadu_pd(pa + 2 * i);
        const __m256d bv = _mm256_loadu_pd(pb + 2 * i);
        const __m256d bs = _mm256_permute_pd(bv, 0b0101);
        re_acc = _mm256_fmadd_pd(av, bv, re_acc);
        // av * swapped(bv) gives (ar*bi, ai*br); im is even lanes minus odd lanes.
        im_acc = _mm256_fmadd_pd(av, bs, im_acc);
    }
    alignas(32) double rl[4], il[4];
    _mm256_store_pd(rl, re_acc);
    _mm256_store_pd(il, im_acc);
    double re = rl[0] + rl[1] + rl[2] + rl[3];
    double im = il[0] - il[1] + il[2] - il[3];
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    const std::size_t n2 = n & ~std::size_t{1};
    for (; i < n2; i += 2) {
        __m256d yv = _mm256_loadu_pd(py + 2 * i);
        yv = cmul_acc(yv, ar, ai, _mm256_loadu_pd(px + 2 * i));
        _mm256_storeu_pd(py + 2 * i, yv);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace cpmfrob::kernels::avx2

#endif  // CPMFROB_HAVE_AVX2
