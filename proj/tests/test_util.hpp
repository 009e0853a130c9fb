#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "cpmfrob/cpmap.hpp"

namespace testutil {

using cpmfrob::cplx;
using cpmfrob::CpMap;
using cpmfrob::Mat;

inline Mat random_mat(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = cplx(n(rng), n(rng));
    return m;
}

inline Mat random_hermitian(std::mt19937_64& rng, std::size_t d) {
    Mat m = random_mat(rng, d, d);
    Mat h = m + m.dagger();
    h *= 0.5;
    return h;
}

// Columns [0, cols) of a Haar-ish random matrix, orthonormalized by
// modified Gram-Schmidt. Requires cols <= rows.
inline Mat random_isometry_cols(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    Mat m = random_mat(rng, rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t p = 0; p < j; ++p) {
                cplx proj = 0.0;
                for (std::size_t i = 0; i < rows; ++i) proj += std::conj(m(i, p)) * m(i, j);
                for (std::size_t i = 0; i < rows; ++i) m(i, j) -= proj * m(i, p);
            }
        double nrm = 0.0;
        for (std::size_t i = 0; i < rows; ++i) nrm += std::norm(m(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < rows; ++i) m(i, j) /= nrm;
    }
    return m;
}

inline Mat random_unitary(std::mt19937_64& rng, std::size_t d) {
    return random_isometry_cols(rng, d, d);
}

// k isometries in_dim -> out_dim with pairwise orthogonal images:
// V_j^dagger V_i = delta_ij * 1. Requires out_dim >= k * in_dim.
inline std::vector<Mat> orthogonal_image_isometries(std::mt19937_64& rng, std::size_t in_dim,
                                                    std::size_t out_dim, std::size_t k) {
    const Mat w = random_isometry_cols(rng, out_dim, k * in_dim);
    std::vector<Mat> vs;
    for (std::size_t b = 0; b < k; ++b) {
        Mat v(out_dim, in_dim);
        for (std::size_t i = 0; i < out_dim; ++i)
            for (std::size_t j = 0; j < in_dim; ++j) v(i, j) = w(i, b * in_dim + j);
        vs.push_back(std::move(v));
    }
    return vs;
}

// Random CP map with the given Kraus count (not trace-preserving).
inline CpMap random_cp_map(std::mt19937_64& rng, std::size_t in_dim, std::size_t out_dim,
                           std::size_t n_kraus) {
    std::vector<Mat> ks;
    for (std::size_t i = 0; i < n_kraus; ++i) ks.push_back(random_mat(rng, out_dim, in_dim));
    return CpMap(in_dim, out_dim, std::move(ks));
}

// Random channel (trace-preserving CP map) via a Stinespring isometry.
inline CpMap random_channel(std::mt19937_64& rng, std::size_t d, std::size_t n_kraus) {
    const Mat w = random_isometry_cols(rng, d * n_kraus, d);  // columns orthonormal
    std::vector<Mat> ks;
    for (std::size_t e = 0; e < n_kraus; ++e) {
        Mat a(d, d);
        for (std::size_t o = 0; o < d; ++o)
            for (std::size_t i = 0; i < d; ++i) a(o, i) = w(o * n_kraus + e, i);
        ks.push_back(std::move(a));
    }
    return CpMap(d, d, std::move(ks));
}

inline std::vector<double> random_unit_weights(std::mt19937_64& rng, std::size_t k) {
    std::uniform_real_distribution<double> u(0.2, 1.0);
    std::vector<double> q(k);
    double s = 0.0;
    for (auto& x : q) {
        x = u(rng);
        s += x * x;
    }
    for (auto& x : q) x /= std::sqrt(s);
    return q;
}

}  // namespace testutil
