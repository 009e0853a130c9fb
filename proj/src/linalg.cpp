#include "cpmfrob/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cpmfrob/kernels.hpp"

namespace cpmfrob {

Mat::Mat(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimMismatch("ragged initializer");
        e_.insert(e_.end(), r.begin(), r.end());
    }
}

Mat Mat::identity(std::size_t d) {
    Mat m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::dagger() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Mat Mat::transpose() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Mat Mat::conj() const {
    Mat r = *this;
    for (auto& z : r.e_) z = std::conj(z);
    return r;
}

cplx Mat::trace() const {
    if (rows_ != cols_) throw DimMismatch("trace of non-square matrix");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double Mat::frob_norm() const {
    double s = 0.0;
    for (const auto& z : e_) s += std::norm(z);
    return std::sqrt(s);
}

bool Mat::all_finite() const {
    return std::all_of(e_.begin(), e_.end(),
                       [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Mat Mat::operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_) throw DimMismatch("matmul shape mismatch");
    Mat r(rows_, rhs.cols_);
    kernels::matmul(data(), rhs.data(), r.data(), rows_, cols_, rhs.cols_);
    return r;
}

Mat Mat::operator+(const Mat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimMismatch("add shape mismatch");
    Mat r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += rhs.e_[i];
    return r;
}

Mat Mat::operator-(const Mat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimMismatch("sub shape mismatch");
    Mat r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= rhs.e_[i];
    return r;
}

Mat& Mat::operator*=(cplx s) {
    for (auto& z : e_) z *= s;
    return *this;
}

cplx frob_inner(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimMismatch("frob_inner shape mismatch");
    return kernels::dot_conj(a.data(), b.data(), a.size());
}

double frob_dist(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimMismatch("frob_dist shape mismatch");
    return std::sqrt(kernels::frob_dist_sq(a.data(), b.data(), a.size()));
}

Mat kron(const Mat& a, const Mat& b) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows && cols && rows > kMaxEntries / cols)
        throw SizeLimit("kron result exceeds entry cap");
    Mat r(rows, cols);
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const cplx av = a(i1, j1);
            if (av == cplx{}) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    r(i1 * b.rows() + i2, j1 * b.cols() + j2) = av * b(i2, j2);
        }
    return r;
}

Mat partial_trace(const Mat& m, std::size_t d1, std::size_t d2, TraceSide which) {
    const std::size_t side = d1 * d2;
    if (m.rows() != side || m.cols() != side) throw DimMismatch("partial_trace side mismatch");
    if (which == TraceSide::first) {
        Mat r(d2, d2);
        for (std::size_t i = 0; i < d2; ++i)
            for (std::size_t j = 0; j < d2; ++j) {
                cplx s = 0.0;
                for (std::size_t k = 0; k < d1; ++k) s += m(k * d2 + i, k * d2 + j);
                r(i, j) = s;
            }
        return r;
    }
    Mat r(d1, d1);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < d2; ++k) s += m(i * d2 + k, j * d2 + k);
            r(i, j) = s;
        }
    return r;
}

Mat swap_op(std::size_t d1, std::size_t d2) {
    Mat s(d1 * d2, d1 * d2);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d2; ++j) s(j * d1 + i, i * d2 + j) = 1.0;
    return s;
}

Mat basis_state(std::size_t d, std::size_t i) {
    Mat v(d, 1);
    v(i, 0) = 1.0;
    return v;
}

namespace {

double offdiag_norm(const Mat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

HermEigResult herm_eig(const Mat& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimMismatch("herm_eig on non-square matrix");
    const double norm = a.frob_norm();
    if (frob_dist(a, a.dagger()) > 1e-9 * (1.0 + norm))
        throw NotHermitian("input is not Hermitian within tolerance");

    // Symmetrize, then run cyclic Jacobi sweeps. Each rotation zeroes one
    // off-diagonal pair; the pivot order is fixed so results are deterministic.
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    Mat v = Mat::identity(n);

    const double tiny = 1e-300;
    const int max_sweeps = 100;
    bool converged = (n <= 1);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        if (offdiag_norm(m) <= 1e-14 * (1.0 + norm)) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = m(p, q);
                const double abs_apq = std::abs(apq);
                if (abs_apq <= tiny) continue;
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const cplx phase = apq / abs_apq;  // e^{i phi}
                const double tau = (app - aqq) / (2.0 * abs_apq);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // J[p,p]=c, J[p,q]=-s e^{i phi}, J[q,p]=s e^{-i phi}, J[q,q]=c
                const cplx jpq = -s * phase;
                const cplx jqp = s * std::conj(phase);
                // columns: M <- M J
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx mp = m(r, p), mq = m(r, q);
                    m(r, p) = c * mp + jqp * mq;
                    m(r, q) = jpq * mp + c * mq;
                }
                // rows: M <- J^dagger M
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx mp = m(p, r), mq = m(q, r);
                    m(p, r) = c * mp + std::conj(jqp) * mq;
                    m(q, r) = std::conj(jpq) * mp + c * mq;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                m(p, p) = m(p, p).real();
                m(q, q) = m(q, q).real();
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx vp = v(r, p), vq = v(r, q);
                    v(r, p) = c * vp + jqp * vq;
                    v(r, q) = jpq * vp + c * vq;
                }
            }
        }
    }
    if (!converged && offdiag_norm(m) > 1e-12 * (1.0 + norm))
        throw NoConvergence("jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return m(i, i).real() > m(j, j).real(); });

    HermEigResult res;
    res.eigenvalues.resize(n);
    res.eigenvectors = Mat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        res.eigenvalues[k] = m(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) res.eigenvectors(r, k) = v(r, order[k]);
    }
    return res;
}

Mat phase_fix(const Mat& m) {
    double best = 0.0;
    cplx pivot = 0.0;
    for (const auto& z : m.entries()) {
        if (std::abs(z) > best) {
            best = std::abs(z);
            pivot = z;
        }
    }
    if (best == 0.0) return m;
    Mat r = m;
    r *= std::conj(pivot) / best;
    return r;
}

}  // namespace cpmfrob
