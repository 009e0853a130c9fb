#include <random>

#include "cpmfrob/linalg.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cpmfrob;
using testutil::random_hermitian;
using testutil::random_mat;

TEST_CASE("matrix basics: dagger, trace, norm, arithmetic") {
    Mat a{{cplx(1, 2), cplx(0, -1)}, {cplx(3, 0), cplx(4, 4)}};
    CHECK(a.dagger()(0, 1) == cplx(3, 0));
    CHECK(a.dagger()(1, 0) == cplx(0, 1));
    CHECK(a.trace() == cplx(5, 6));
    CHECK(a.frob_norm() == doctest::Approx(std::sqrt(1 + 4 + 1 + 9 + 16 + 16)));
    const Mat id = Mat::identity(2);
    CHECK(frob_dist(a * id, a) == 0.0);
    CHECK(frob_dist(a + (-1.0 * a), Mat(2, 2)) == 0.0);
}

TEST_CASE("frob_inner and frob_dist against elementwise loops") {
    std::mt19937_64 rng(21);
    const Mat a = random_mat(rng, 4, 3), b = random_mat(rng, 4, 3);
    cplx inner = 0.0;
    double d2 = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            inner += std::conj(a(i, j)) * b(i, j);
            d2 += std::norm(a(i, j) - b(i, j));
        }
    CHECK(std::abs(frob_inner(a, b) - inner) < 1e-12);
    CHECK(frob_dist(a, b) == doctest::Approx(std::sqrt(d2)).epsilon(1e-12));
}

TEST_CASE("kron against the quadruple-loop definition") {
    std::mt19937_64 rng(22);
    const Mat a = random_mat(rng, 2, 3), b = random_mat(rng, 3, 2);
    const Mat k = kron(a, b);
    REQUIRE(k.rows() == 6);
    REQUIRE(k.cols() == 6);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t p = 0; p < 3; ++p)
                for (std::size_t q = 0; q < 2; ++q)
                    CHECK(k(i * 3 + p, j * 2 + q) == a(i, j) * b(p, q));
    CHECK_THROWS_AS(kron(Mat(1 << 11, 1), Mat(1 << 11, 1)), SizeLimit);
}

TEST_CASE("partial trace of a kron factorizes") {
    std::mt19937_64 rng(23);
    const Mat a = random_mat(rng, 3, 3), b = random_mat(rng, 2, 2);
    const Mat m = kron(a, b);
    Mat tr2 = partial_trace(m, 3, 2, TraceSide::second);
    Mat tr1 = partial_trace(m, 3, 2, TraceSide::first);
    CHECK(frob_dist(tr2, b.trace() * a) < 1e-12);
    CHECK(frob_dist(tr1, a.trace() * b) < 1e-12);
    CHECK(std::abs(partial_trace(m, 3, 2, TraceSide::first).trace() - m.trace()) < 1e-12);
}

TEST_CASE("swap_op exchanges tensor factors and is its own inverse-transpose") {
    std::mt19937_64 rng(24);
    const Mat u = random_mat(rng, 2, 1), v = random_mat(rng, 3, 1);
    const Mat s = swap_op(2, 3);
    CHECK(frob_dist(s * kron(u, v), kron(v, u)) < 1e-12);
    CHECK(frob_dist(swap_op(3, 2) * s, Mat::identity(6)) < 1e-12);
}

TEST_CASE("herm_eig on a known diagonal matrix") {
    Mat d(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const auto r = herm_eig(d);
    REQUIRE(r.eigenvalues.size() == 3);
    CHECK(r.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(r.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(r.eigenvalues[2] == doctest::Approx(1.0));
}

TEST_CASE("herm_eig on sigma_x") {
    Mat sx{{0.0, 1.0}, {1.0, 0.0}};
    const auto r = herm_eig(sx);
    CHECK(r.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(r.eigenvalues[1] == doctest::Approx(-1.0));
    // eigenvector of +1 is (1,1)/sqrt2 up to phase
    CHECK(std::abs(std::abs(r.eigenvectors(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
    std::mt19937_64 rng(25);
    for (std::size_t d : {1, 2, 5, 6, 12}) {
        const Mat h = random_hermitian(rng, d);
        const auto r = herm_eig(h);
        Mat lam(d, d);
        double sum = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            lam(i, i) = r.eigenvalues[i];
            sum += r.eigenvalues[i];
            if (i) CHECK(r.eigenvalues[i - 1] >= r.eigenvalues[i]);
        }
        const Mat& v = r.eigenvectors;
        CHECK(frob_dist(v * lam * v.dagger(), h) < 1e-11 * (1.0 + h.frob_norm()));
        CHECK(frob_dist(v.dagger() * v, Mat::identity(d)) < 1e-11);
        CHECK(sum == doctest::Approx(h.trace().real()).epsilon(1e-10));
    }
}

TEST_CASE("herm_eig of a PSD Gram matrix has no significantly negative eigenvalues") {
    std::mt19937_64 rng(26);
    const Mat m = random_mat(rng, 4, 7);
    const Mat g = m * m.dagger();
    const auto r = herm_eig(g);
    for (double lam : r.eigenvalues) CHECK(lam > -1e-10 * (1.0 + g.frob_norm()));
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
    Mat m{{0.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(herm_eig(m), NotHermitian);
}

TEST_CASE("phase_fix pivots the largest entry to the positive real axis") {
    Mat m{{cplx(0, 0.5), cplx(-2, 0)}, {cplx(0.1, 0.1), cplx(0, 0)}};
    const Mat f = phase_fix(m);
    CHECK(f(0, 1).real() == doctest::Approx(2.0));
    CHECK(std::abs(f(0, 1).imag()) < 1e-15);
    CHECK(frob_dist(phase_fix(f), f) < 1e-15);        // idempotent
    CHECK(phase_fix(Mat(2, 2)) == Mat(2, 2));         // zero unchanged
    CHECK(f.frob_norm() == doctest::Approx(m.frob_norm()));
}
