#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "cpmfrob/errors.hpp"

namespace cpmfrob {

using cplx = std::complex<double>;

// Matrices larger than this (in entries) are refused by kron/choi.
inline constexpr std::size_t kMaxEntries = std::size_t{1} << 20;

/// Dense complex matrix, row-major.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    Mat(std::initializer_list<std::initializer_list<cplx>> rows);

    static Mat identity(std::size_t d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return e_.size(); }

    cplx& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    const cplx* data() const { return e_.data(); }
    cplx* data() { return e_.data(); }
    const std::vector<cplx>& entries() const { return e_; }

    Mat dagger() const;
    Mat transpose() const;
    Mat conj() const;
    cplx trace() const;
    double frob_norm() const;
    bool all_finite() const;

    Mat operator*(const Mat& rhs) const;
    Mat operator+(const Mat& rhs) const;
    Mat operator-(const Mat& rhs) const;
    Mat& operator*=(cplx s);
    friend Mat operator*(cplx s, Mat m) {
        m *= s;
        return m;
    }

    bool operator==(const Mat& rhs) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> e_;
};

/// Frobenius inner product Tr(a^dagger b).
cplx frob_inner(const Mat& a, const Mat& b);

/// Frobenius distance ||a - b||_F. Shapes must match.
double frob_dist(const Mat& a, const Mat& b);

/// Kronecker product. Refuses results beyond kMaxEntries entries.
Mat kron(const Mat& a, const Mat& b);

enum class TraceSide { first, second };

/// Partial trace of a square matrix of side d1*d2 over the given factor.
Mat partial_trace(const Mat& m, std::size_t d1, std::size_t d2, TraceSide which);

/// Permutation matrix S of side d1*d2 with S (u (x) v) = v (x) u.
Mat swap_op(std::size_t d1, std::size_t d2);

/// Column basis vector e_i of dimension d.
Mat basis_state(std::size_t d, std::size_t i);

struct HermEigResult {
    std::vector<double> eigenvalues;  // descending
    Mat eigenvectors;                 // column k pairs with eigenvalue k
};

/// Eigendecomposition of a (near-)Hermitian matrix by cyclic complex Jacobi.
/// The input is symmetrized as (a + a^dagger)/2 before solving.
HermEigResult herm_eig(const Mat& a);

/// Makes the largest-magnitude entry real positive (ties: lowest row-major
/// index); zero matrices are returned unchanged.
Mat phase_fix(const Mat& m);

}  // namespace cpmfrob
