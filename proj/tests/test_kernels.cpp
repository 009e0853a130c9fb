#include <array>
#include <random>
#include <vector>

#include "cpmfrob/kernels.hpp"
#include "doctest.h"

using namespace cpmfrob::kernels;

namespace {

std::vector<cplx> random_buf(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = cplx(d(rng), d(rng));
    return v;
}

bool try_force_avx2() {
    try {
        force_backend(Backend::avx2);
        return true;
    } catch (...) {
        return false;
    }
}

}  // namespace

TEST_CASE("matmul scalar reference against naive triple loop") {
    std::mt19937_64 rng(11);
    for (auto [m, k, n] : {std::array<std::size_t, 3>{1, 1, 1},
                           {3, 5, 2},
                           {4, 4, 4},
                           {7, 3, 9},
                           {16, 16, 16}}) {
        const auto a = random_buf(rng, m * k);
        const auto b = random_buf(rng, k * n);
        std::vector<cplx> c(m * n), ref(m * n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                cplx s = 0.0;
                for (std::size_t p = 0; p < k; ++p) s += a[i * k + p] * b[p * n + j];
                ref[i * n + j] = s;
            }
        scalar::matmul(a.data(), b.data(), c.data(), m, k, n);
        for (std::size_t i = 0; i < m * n; ++i) CHECK(std::abs(c[i] - ref[i]) < 1e-12);
    }
}

TEST_CASE("simd backend matches scalar reference") {
    if (!try_force_avx2()) {
        reset_backend();
        return;  // host without AVX2: dispatch equivalence is vacuous
    }
    std::mt19937_64 rng(12);
    // Odd lengths exercise the vector remainder paths.
    for (std::size_t n : {1, 2, 3, 4, 5, 7, 8, 15, 64, 129}) {
        const auto x = random_buf(rng, n);
        const auto y = random_buf(rng, n);

        CHECK(frob_dist_sq(x.data(), y.data(), n) ==
              doctest::Approx(scalar::frob_dist_sq(x.data(), y.data(), n)).epsilon(1e-12));

        const cplx ds = scalar::dot_conj(x.data(), y.data(), n);
        const cplx dv = dot_conj(x.data(), y.data(), n);
        CHECK(std::abs(ds - dv) < 1e-10 * (1.0 + std::abs(ds)));

        std::vector<cplx> ys = y, yv = y;
        const cplx alpha(0.3, -1.7);
        scalar::axpy(alpha, x.data(), ys.data(), n);
        axpy(alpha, x.data(), yv.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ys[i] - yv[i]) < 1e-12);
    }
    for (auto [m, k, n] : {std::array<std::size_t, 3>{2, 3, 4}, {5, 5, 5}, {9, 17, 3}, {32, 32, 32}}) {
        const auto a = random_buf(rng, m * k);
        const auto b = random_buf(rng, k * n);
        std::vector<cplx> cs(m * n), cv(m * n);
        scalar::matmul(a.data(), b.data(), cs.data(), m, k, n);
        matmul(a.data(), b.data(), cv.data(), m, k, n);
        for (std::size_t i = 0; i < m * n; ++i)
            CHECK(std::abs(cs[i] - cv[i]) < 1e-10 * (1.0 + std::abs(cs[i])));
    }
    reset_backend();
}

TEST_CASE("backend forcing is honored and reversible") {
    force_backend(Backend::scalar);
    CHECK(active_backend() == Backend::scalar);
    reset_backend();
    if (try_force_avx2()) CHECK(active_backend() == Backend::avx2);
    reset_backend();
}
