#include "cpmfrob/cpmap.hpp"

#include <algorithm>
#include <cmath>

#include "cpmfrob/kernels.hpp"

namespace cpmfrob {

namespace {

// Vectorization matching the input-factor-first Choi convention:
// vec(A)[i * out + a] = A(a, i), so <vec(A), vec(B)> = Tr(A^dagger B).
std::vector<cplx> vec_of(const Mat& a) {
    const std::size_t out = a.rows(), in = a.cols();
    std::vector<cplx> v(in * out);
    for (std::size_t i = 0; i < in; ++i)
        for (std::size_t o = 0; o < out; ++o) v[i * out + o] = a(o, i);
    return v;
}

double norm_of(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

// Eigendecomposition of the Kraus Gram matrix G_kl = Tr(A_k^dagger A_l),
// plus the rotated operators B_i = sum_k U_ki A_k. The nonzero Choi
// spectrum equals the spectrum of G, and sum_i vec(B_i) vec(B_i)^dagger
// reproduces the Choi exactly.
struct GramEig {
    std::vector<double> lambda;
    std::vector<Mat> rotated;
};

GramEig gram_eig(const CpMap& phi) {
    const auto& ks = phi.kraus();
    const std::size_t n = ks.size();
    Mat g(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) g(k, l) = frob_inner(ks[k], ks[l]);
    HermEigResult eig = herm_eig(g);
    GramEig res;
    res.lambda = eig.eigenvalues;
    res.rotated.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Mat b(phi.out_dim(), phi.in_dim());
        for (std::size_t k = 0; k < n; ++k)
            kernels::axpy(eig.eigenvectors(k, i), ks[k].data(), b.data(), b.size());
        res.rotated.push_back(std::move(b));
    }
    return res;
}

CpMap recompress(CpMap m) {
    if (m.kraus().size() > m.in_dim() * m.out_dim())
        return CpMap(m.in_dim(), m.out_dim(), minimal_kraus(m));
    return m;
}

}  // namespace

CpMap::CpMap(std::size_t in_dim, std::size_t out_dim, std::vector<Mat> kraus)
    : in_(in_dim), out_(out_dim), kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw DimMismatch("kraus list must be nonempty");
    for (const auto& k : kraus_) {
        if (k.rows() != out_ || k.cols() != in_) throw DimMismatch("kraus operator shape mismatch");
        if (!k.all_finite()) throw Error("non-finite kraus operator");
    }
}

CpMap CpMap::zero(std::size_t in_dim, std::size_t out_dim) {
    return CpMap(in_dim, out_dim, {Mat(out_dim, in_dim)});
}

Mat CpMap::apply(const Mat& rho) const {
    if (rho.rows() != in_ || rho.cols() != in_) throw DimMismatch("apply: state dimension mismatch");
    Mat out(out_, out_);
    for (const auto& k : kraus_) {
        Mat t = k * rho * k.dagger();
        for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += t.data()[i];
    }
    return out;
}

CpMap cpm_double(const Mat& f) { return CpMap(f.cols(), f.rows(), {f}); }

Mat choi(const CpMap& phi) {
    const std::size_t side = phi.in_dim() * phi.out_dim();
    if (side && side > kMaxEntries / side) throw SizeLimit("choi matrix exceeds entry cap");
    Mat c(side, side);
    for (const auto& k : phi.kraus()) {
        const auto v = vec_of(k);
        for (std::size_t i = 0; i < side; ++i) {
            if (v[i] == cplx{}) continue;
            for (std::size_t j = 0; j < side; ++j) c(i, j) += v[i] * std::conj(v[j]);
        }
    }
    return c;
}

CpMap from_choi(const Mat& c, std::size_t in_dim, std::size_t out_dim) {
    const std::size_t side = in_dim * out_dim;
    if (c.rows() != side || c.cols() != side) throw DimMismatch("choi side mismatch");
    HermEigResult eig;
    try {
        eig = herm_eig(c);
    } catch (const NotHermitian&) {
        throw NotCP("choi matrix is not Hermitian");
    }
    const double norm = c.frob_norm();
    if (!eig.eigenvalues.empty() && eig.eigenvalues.back() < -1e-9 * norm)
        throw NotCP("choi matrix has a negative eigenvalue");
    const double lmax = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
    std::vector<Mat> kraus;
    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
        const double l = eig.eigenvalues[k];
        if (l <= 1e-10 * lmax || l <= 0.0) continue;
        Mat a(out_dim, in_dim);
        const double s = std::sqrt(l);
        for (std::size_t i = 0; i < in_dim; ++i)
            for (std::size_t o = 0; o < out_dim; ++o) a(o, i) = s * eig.eigenvectors(i * out_dim + o, k);
        kraus.push_back(phase_fix(a));
    }
    if (kraus.empty()) return CpMap::zero(in_dim, out_dim);
    return CpMap(in_dim, out_dim, std::move(kraus));
}

double choi_dist(const CpMap& f, const CpMap& g) {
    if (f.in_dim() != g.in_dim() || f.out_dim() != g.out_dim())
        throw DimMismatch("choi_dist signature mismatch");
    // Orthonormalize the vectorized Kraus operators of both maps; the Choi
    // difference lives in that small span, so its Frobenius norm is the norm
    // of a (k+l)-sized Hermitian coefficient matrix. Avoids both the memory
    // of an explicit Choi and the cancellation of the Gram-only formula.
    std::vector<std::vector<cplx>> basis;
    std::vector<std::vector<cplx>> coeffs;
    std::vector<double> signs;
    const std::size_t len = f.in_dim() * f.out_dim();
    auto feed = [&](const CpMap& m, double sign) {
        for (const auto& k : m.kraus()) {
            auto x = vec_of(k);
            const double orig = norm_of(x);
            std::vector<cplx> r(basis.size(), cplx{});
            if (orig > 0.0) {
                for (int pass = 0; pass < 2; ++pass) {
                    for (std::size_t q = 0; q < basis.size(); ++q) {
                        const cplx c = kernels::dot_conj(basis[q].data(), x.data(), len);
                        kernels::axpy(-c, basis[q].data(), x.data(), len);
                        r[q] += c;
                    }
                }
            }
            const double rem = norm_of(x);
            if (rem > 1e-14 * orig && rem > 0.0) {
                for (auto& z : x) z /= rem;
                basis.push_back(std::move(x));
                r.push_back(rem);
            }
            coeffs.push_back(std::move(r));
            signs.push_back(sign);
        }
    };
    feed(f, 1.0);
    feed(g, -1.0);
    const std::size_t dim = basis.size();
    Mat m(dim, dim);
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
        const auto& r = coeffs[t];
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i] == cplx{}) continue;
            for (std::size_t j = 0; j < r.size(); ++j) m(i, j) += signs[t] * r[i] * std::conj(r[j]);
        }
    }
    return m.frob_norm();
}

std::vector<Mat> minimal_kraus(const CpMap& phi) {
    GramEig ge = gram_eig(phi);
    const double lmax = ge.lambda.empty() ? 0.0 : std::max(ge.lambda.front(), 0.0);
    std::vector<Mat> out;
    for (std::size_t i = 0; i < ge.lambda.size(); ++i)
        if (ge.lambda[i] > 1e-10 * lmax && ge.lambda[i] > 0.0) out.push_back(phase_fix(ge.rotated[i]));
    if (out.empty()) out.push_back(Mat(phi.out_dim(), phi.in_dim()));
    return out;
}

CpMap compose(const CpMap& g, const CpMap& f) {
    if (f.out_dim() != g.in_dim()) throw DimMismatch("compose signature mismatch");
    std::vector<Mat> kraus;
    kraus.reserve(f.kraus().size() * g.kraus().size());
    for (const auto& bg : g.kraus())
        for (const auto& af : f.kraus()) kraus.push_back(bg * af);
    return recompress(CpMap(f.in_dim(), g.out_dim(), std::move(kraus)));
}

CpMap tensor(const CpMap& f, const CpMap& g) {
    std::vector<Mat> kraus;
    kraus.reserve(f.kraus().size() * g.kraus().size());
    for (const auto& af : f.kraus())
        for (const auto& bg : g.kraus()) kraus.push_back(kron(af, bg));
    return recompress(CpMap(f.in_dim() * g.in_dim(), f.out_dim() * g.out_dim(), std::move(kraus)));
}

CpMap dagger(const CpMap& f) {
    std::vector<Mat> kraus;
    kraus.reserve(f.kraus().size());
    for (const auto& a : f.kraus()) kraus.push_back(a.dagger());
    return CpMap(f.out_dim(), f.in_dim(), std::move(kraus));
}

CpMap add(std::span<const CpMap> maps, std::span<const double> weights) {
    if (maps.empty() || maps.size() != weights.size()) throw DimMismatch("add: size mismatch");
    const std::size_t in = maps[0].in_dim(), out = maps[0].out_dim();
    std::vector<Mat> kraus;
    for (std::size_t m = 0; m < maps.size(); ++m) {
        if (maps[m].in_dim() != in || maps[m].out_dim() != out)
            throw DimMismatch("add: signature mismatch");
        if (weights[m] < 0.0) throw Error("add: negative weight");
        if (weights[m] == 0.0) continue;
        const double s = std::sqrt(weights[m]);
        for (const auto& a : maps[m].kraus()) kraus.push_back(s * a);
    }
    if (kraus.empty()) return CpMap::zero(in, out);
    return recompress(CpMap(in, out, std::move(kraus)));
}

CpMap discard(std::size_t d) {
    std::vector<Mat> kraus;
    for (std::size_t i = 0; i < d; ++i) kraus.push_back(basis_state(d, i).dagger());
    if (kraus.empty()) kraus.push_back(Mat(1, 0));
    return CpMap(d, 1, std::move(kraus));
}

CpMap identity_channel(std::size_t d) { return cpm_double(Mat::identity(d)); }

PurityVerdict is_pure(const CpMap& phi, double rel_tol) {
    GramEig ge = gram_eig(phi);
    PurityVerdict v;
    const double l1 = ge.lambda.empty() ? 0.0 : ge.lambda.front();
    if (l1 <= 0.0) {
        // zero map, which is also pure
        v.is_pure = true;
        v.pure_part = Mat(phi.out_dim(), phi.in_dim());
        v.residual = 0.0;
        return v;
    }
    double tail_sq = 0.0, total_sq = l1 * l1;
    double l2 = 0.0;
    for (std::size_t i = 1; i < ge.lambda.size(); ++i) {
        const double l = std::max(ge.lambda[i], 0.0);
        if (i == 1) l2 = l;
        tail_sq += l * l;
        total_sq += l * l;
    }
    v.residual = std::sqrt(tail_sq / total_sq);
    v.is_pure = (l2 <= rel_tol * l1);
    if (v.is_pure) v.pure_part = phase_fix(ge.rotated.front());
    return v;
}

Purification purify(const CpMap& phi) {
    const std::vector<Mat> b = minimal_kraus(phi);
    const std::size_t env = b.size();
    const std::size_t out = phi.out_dim(), in = phi.in_dim();
    Mat psi(out * env, in);
    for (std::size_t e = 0; e < env; ++e)
        for (std::size_t o = 0; o < out; ++o)
            for (std::size_t i = 0; i < in; ++i) psi(o * env + e, i) = b[e](o, i);
    return {std::move(psi), env};
}

Mat purity_witness(const Mat& psi, std::size_t env_dim, const CpMap& f_claim) {
    const std::size_t out = f_claim.out_dim(), in = f_claim.in_dim();
    if (env_dim == 0 || psi.rows() != out * env_dim || psi.cols() != in)
        throw DimMismatch("purity_witness: psi shape mismatch");
    std::vector<Mat> slices;
    slices.reserve(env_dim);
    for (std::size_t e = 0; e < env_dim; ++e) {
        Mat p(out, in);
        for (std::size_t o = 0; o < out; ++o)
            for (std::size_t i = 0; i < in; ++i) p(o, i) = psi(o * env_dim + e, i);
        slices.push_back(std::move(p));
    }
    const CpMap marginal(in, out, slices);
    if (choi_dist(marginal, f_claim) > 1e-8)
        throw NotFactorizable("environment-discarded psi does not match the claimed map");
    const PurityVerdict pv = is_pure(f_claim);
    if (!pv.is_pure) throw NotPure("claimed map is not pure");
    const Mat& g = *pv.pure_part;
    const double gn2 = g.frob_norm() * g.frob_norm();
    if (gn2 == 0.0) throw NotFactorizable("claimed map is zero; witness undefined");

    // least squares: v_e = <g, psi_e> / ||g||^2
    Mat v(env_dim, 1);
    for (std::size_t e = 0; e < env_dim; ++e) v(e, 0) = frob_inner(g, slices[e]) / gn2;
    Mat model(psi.rows(), psi.cols());
    for (std::size_t e = 0; e < env_dim; ++e)
        for (std::size_t o = 0; o < out; ++o)
            for (std::size_t i = 0; i < in; ++i) model(o * env_dim + e, i) = g(o, i) * v(e, 0);
    if (frob_dist(psi, model) > 1e-7 * (1.0 + psi.frob_norm()))
        throw NotFactorizable("psi is not a product g (x) v within tolerance");
    const double vn = v.frob_norm();
    v *= 1.0 / vn;
    return v;
}

}  // namespace cpmfrob
