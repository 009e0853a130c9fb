#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "cpmfrob/cpmap.hpp"

namespace cpmfrob {

/// Comonoid data (delta: H -> H(x)H, epsilon: H -> C) in fHilb, claimed or
/// verified to be a special symmetric dagger-Frobenius algebra.
struct FrobeniusAlgebra {
    std::size_t dim = 0;
    Mat delta;    // d^2 x d
    Mat epsilon;  // 1 x d
    bool verified = false;
};

/// Candidate comonoid in CPM(fHilb).
struct CpComonoid {
    std::size_t dim;
    CpMap delta;   // d -> d^2
    CpMap counit;  // d -> 1
};

struct AxiomReport {
    // law name in {assoc, left_unit, right_unit, symmetry, speciality,
    // snake_left, snake_right, frobenius} -> Frobenius distance LHS vs RHS
    std::map<std::string, double> residuals;
    // Doubled scalar of the left snake composite with both wires closed;
    // equals dim^2 for a verified canonical structure.
    double snake_trace = 0.0;
    // Per-component snake scalars (expected delta_ij); CP-level checks only.
    std::optional<Mat> lambda_matrix;
    std::optional<Mat> rho_matrix;

    double max_residual() const;
    bool all_within(double tol) const;
};

struct PhaseReport {
    double alpha = 0.0;   // associativity
    double rho = 0.0;     // right unit
    double sigma = 0.0;   // symmetry
    double phi = 0.0;     // Frobenius
    double lambda = 0.0;  // left unit
};

/// Residuals of all eight laws for (delta, epsilon) at the fHilb level.
AxiomReport check_fhilb_algebra(const FrobeniusAlgebra& a, double tol = 1e-9);

/// Residuals of the comonoid laws at the Choi level, plus snake diagnostics.
AxiomReport check_cp_comonoid(const CpComonoid& c, double tol = 1e-8);

/// Phase of each law, theta = arg <RHS, LHS> under the Frobenius inner
/// product, each in (-pi, pi]. Throws NotProjectiveAlgebra if a law fails
/// even after removing the optimal phase.
PhaseReport measure_phases(const Mat& delta, const Mat& epsilon);

/// Rescales epsilon by e^{-i lambda} (lambda the left-unit phase); the result
/// must pass check_fhilb_algebra at 1e-8 or NotFrobenius is thrown.
FrobeniusAlgebra normalize_phases(const Mat& delta, const Mat& epsilon);

// Generators.

/// Classical structure of an orthonormal basis: delta(e_i) = e_i (x) e_i,
/// epsilon(e_i) = 1.
FrobeniusAlgebra spider(std::size_t d);

/// Matrix algebra M_n on C^{n^2}: delta(E_ij) = (1/sqrt n) sum_k E_ik (x) E_kj,
/// epsilon = sqrt(n) Tr.
FrobeniusAlgebra matrix_algebra(std::size_t n);

/// Group algebra of Z_n: delta(g) = (1/sqrt n) sum_h h (x) h^{-1}g,
/// epsilon(g) = sqrt(n) [g = e].
FrobeniusAlgebra cyclic_group_algebra(std::size_t n);

FrobeniusAlgebra direct_sum(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b);

/// Spider of the orthonormal basis given by the columns of a unitary u.
FrobeniusAlgebra rotated_spider(const Mat& u);

CpComonoid double_algebra(const FrobeniusAlgebra& a);

/// (e^{i theta[0]} delta, e^{i theta[1]} epsilon); adversarial/test inputs.
std::pair<Mat, Mat> perturb_phases(const FrobeniusAlgebra& a, std::span<const double> theta);

/// Convex combination at the CP level. The output is generally NOT a
/// comonoid; it exists to produce adversarial inputs.
CpComonoid mix_comonoids(std::span<const CpComonoid> cs, std::span<const double> weights);

}  // namespace cpmfrob
