#include "cpmfrob/kernels.hpp"

#include <algorithm>

namespace cpmfrob::kernels::scalar {

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
    std::fill(c, c + m * n, cplx{});
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = a + i * k;
        cplx* crow = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const cplx ail = arow[l];
            if (ail == cplx{}) continue;
            const cplx* brow = b + l * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
        }
    }
}

double frob_dist_sq(const cplx* a, const cplx* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = a[i].real() - b[i].real();
        const double di = a[i].imag() - b[i].imag();
        acc += dr * dr + di * di;
    }
    return acc;
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace cpmfrob::kernels::scalar
