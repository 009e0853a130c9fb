#include "cpmfrob/canonicalize.hpp"

#include <algorithm>
#include <cmath>

#include "cpmfrob/kernels.hpp"

namespace cpmfrob {

IsometryDecomposition decompose_cp_isometry(const CpMap& phi, double tol) {
    const std::size_t in = phi.in_dim();
    const double iso_dist = choi_dist(compose(dagger(phi), phi), identity_channel(in));
    if (iso_dist > tol) throw NotIsometry(iso_dist);

    const std::vector<Mat> a = minimal_kraus(phi);
    const std::size_t n = a.size();

    // The isometry hypothesis forces A_k^dagger A_l = c_kl * 1; C is the
    // scaled Kraus Gram matrix, whose eigenvalues are the coefficients q_i.
    Mat c(n, n);
    const Mat id = Mat::identity(in);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            const Mat prod = a[k].dagger() * a[l];
            const cplx ckl = prod.trace() / static_cast<double>(in);
            c(k, l) = ckl;
            Mat scaled = id;
            scaled *= ckl;
            if (frob_dist(prod, scaled) > tol)
                throw NotIsometry(frob_dist(prod, scaled));
        }

    const HermEigResult eig = herm_eig(c);
    const double lmax = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
    const bool zero_input = std::all_of(a.begin(), a.end(),
                                        [](const Mat& k) { return k.frob_norm() == 0.0; });

    IsometryDecomposition dec;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = eig.eigenvalues[i];
        if (q <= tol * lmax || q <= 0.0) continue;
        Mat b(phi.out_dim(), in);
        for (std::size_t k = 0; k < n; ++k)
            kernels::axpy(eig.eigenvectors(k, i), a[k].data(), b.data(), b.size());
        b *= 1.0 / std::sqrt(q);
        dec.coeffs.push_back(q);
        dec.isometries.push_back(phase_fix(b));
    }
    dec.count = dec.coeffs.size();
    if (dec.count == 0 && !zero_input)
        throw NumericalDegeneracy("no eigenvalue survived the retention cutoff");
    return dec;
}

CanonicalizationResult canonicalize_comonoid(const CpComonoid& c, double tol) {
    AxiomReport report = check_cp_comonoid(c, tol);
    // Associativity is reported but not required (it is implied for true
    // instances and the theorem holds without it).
    for (const char* law : {"left_unit", "right_unit", "speciality", "snake_left", "snake_right"})
        if (report.residuals.at(law) > tol) throw HypothesesFailed(report);

    if (c.dim == 0) {
        CanonicalizationResult res;
        res.algebra = FrobeniusAlgebra{0, Mat(0, 0), Mat(1, 0), true};
        res.report = std::move(report);
        return res;
    }

    IsometryDecomposition dec;
    try {
        dec = decompose_cp_isometry(c.delta, tol);
    } catch (const NotIsometry&) {
        // speciality passed the Choi-level check but the Kraus Gram scalars
        // did not; still a hypothesis violation.
        throw HypothesesFailed(report);
    }
    if (dec.count >= 2)
        throw TheoremViolationDiagnostic(
            "comultiplication decomposes into " + std::to_string(dec.count) +
            " pure isometries at positive dimension; hypotheses must be violated beyond tolerance");
    if (dec.count == 0) throw NumericalDegeneracy("comultiplication is numerically zero");

    Mat delta = dec.isometries[0];
    delta *= std::sqrt(dec.coeffs[0]);  // q_1 == 1 up to tolerance

    const PurityVerdict pv = is_pure(c.counit, tol);
    if (!pv.is_pure) throw CounitNotPure("counit has Choi rank >= 2");
    const Mat& eps_raw = *pv.pure_part;

    FrobeniusAlgebra algebra;
    double lambda = 0.0;
    try {
        lambda = measure_phases(delta, eps_raw).lambda;
        algebra = normalize_phases(delta, eps_raw);
    } catch (const NotProjectiveAlgebra& e) {
        throw NotFrobenius(std::string("extracted structure is not projectively Frobenius: ") +
                           e.what());
    }

    CanonicalizationResult res;
    res.algebra = std::move(algebra);
    res.lambda_used = lambda;
    res.residual_delta = choi_dist(cpm_double(res.algebra.delta), c.delta);
    res.residual_epsilon = choi_dist(cpm_double(res.algebra.epsilon), c.counit);
    res.report = std::move(report);
    return res;
}

AxiomReport verify_canonical(const CanonicalizationResult& result, const CpComonoid& c) {
    AxiomReport rep = check_fhilb_algebra(result.algebra);
    rep.residuals["doubling_delta"] = choi_dist(cpm_double(result.algebra.delta), c.delta);
    rep.residuals["doubling_epsilon"] = choi_dist(cpm_double(result.algebra.epsilon), c.counit);
    return rep;
}

}  // namespace cpmfrob
