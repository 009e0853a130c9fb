#pragma once

#include "cpmfrob/frobenius.hpp"

namespace cpmfrob {

/// Comonoid hypotheses (unit laws, speciality, snakes) violated beyond
/// tolerance; carries the full axiom report of the rejected input.
struct HypothesesFailed : Error {
    explicit HypothesesFailed(AxiomReport report)
        : Error("comonoid hypotheses violated beyond tolerance"), report(std::move(report)) {}
    AxiomReport report;
};

/// Decomposition of a CP isometry into an R+-combination of pure isometries
/// with pairwise orthogonal images: Phi = sum_i q_i CPM(V_i),
/// V_j^dagger V_i = delta_ij 1, sum_i q_i^2 = 1.
struct IsometryDecomposition {
    std::vector<double> coeffs;  // q_i > 0
    std::vector<Mat> isometries;
    std::size_t count = 0;
};

struct CanonicalizationResult {
    FrobeniusAlgebra algebra;
    double lambda_used = 0.0;      // left-unit phase removed
    double residual_delta = 0.0;   // Choi distance CPM(delta) vs input Delta
    double residual_epsilon = 0.0; // Choi distance CPM(epsilon) vs input E
    AxiomReport report;            // CP-level report of the input
};

/// Decomposes a CP isometry via the eigendecomposition of the Kraus Gram
/// matrix c_ij = Tr(A_j^dagger A_i) / in_dim. Throws NotIsometry when
/// Phi^dagger Phi is not the identity channel (or the Gram scalars fail),
/// NumericalDegeneracy if nothing survives the retention cutoff.
IsometryDecomposition decompose_cp_isometry(const CpMap& phi, double tol = 1e-8);

/// Full pipeline: hypothesis check, comultiplication decomposition (must be
/// pure), counit purity, left-unit phase normalization, verification.
CanonicalizationResult canonicalize_comonoid(const CpComonoid& c, double tol = 1e-8);

/// Recomputes the doubling residuals and the fHilb axiom report from scratch.
/// Residuals recomputed here match the stored ones to 1e-12 (determinism).
AxiomReport verify_canonical(const CanonicalizationResult& result, const CpComonoid& c);

}  // namespace cpmfrob
