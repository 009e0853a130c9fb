#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cpmfrob/linalg.hpp"

namespace cpmfrob {

/// Completely positive map between finite-dimensional spaces, stored as a
/// nonempty Kraus list (the zero map keeps a single all-zero operator).
class CpMap {
public:
    CpMap(std::size_t in_dim, std::size_t out_dim, std::vector<Mat> kraus);

    static CpMap zero(std::size_t in_dim, std::size_t out_dim);

    std::size_t in_dim() const { return in_; }
    std::size_t out_dim() const { return out_; }
    const std::vector<Mat>& kraus() const { return kraus_; }

    /// rho |-> sum_k A_k rho A_k^dagger
    Mat apply(const Mat& rho) const;

private:
    std::size_t in_, out_;
    std::vector<Mat> kraus_;
};

/// Doubling: f |-> the pure CP map rho -> f rho f^dagger.
CpMap cpm_double(const Mat& f);

/// Choi matrix, input factor first: sum_ij E_ij (x) Phi(E_ij).
/// Refuses results beyond kMaxEntries entries.
Mat choi(const CpMap& phi);

/// Kraus operators from the eigendecomposition of a PSD Choi matrix,
/// discarding eigenvalues below 1e-10 * lambda_max.
CpMap from_choi(const Mat& c, std::size_t in_dim, std::size_t out_dim);

/// Frobenius distance between the Choi matrices of f and g, computed in the
/// span of the vectorized Kraus operators (never materializes the Choi).
double choi_dist(const CpMap& f, const CpMap& g);

/// Minimal Kraus list (vec-orthogonal, norms descending) obtained from the
/// Gram matrix of the vectorized Kraus operators.
std::vector<Mat> minimal_kraus(const CpMap& phi);

CpMap compose(const CpMap& g, const CpMap& f);
CpMap tensor(const CpMap& f, const CpMap& g);
CpMap dagger(const CpMap& f);
CpMap add(std::span<const CpMap> maps, std::span<const double> weights);

/// The trace effect on dimension d (Kraus {<i|}).
CpMap discard(std::size_t d);

CpMap identity_channel(std::size_t d);

struct PurityVerdict {
    bool is_pure = false;
    std::optional<Mat> pure_part;  // phase-normalized single Kraus operator
    double residual = 0.0;         // relative distance of Choi to best rank-1
};

/// Rank-1 test on the Choi spectrum: pure iff lambda_2 <= rel_tol * lambda_1.
PurityVerdict is_pure(const CpMap& phi, double rel_tol = 1e-8);

struct Purification {
    Mat psi;              // (out_dim * env_dim) x in_dim, environment second
    std::size_t env_dim;  // number of retained Kraus operators
};

/// Pure map psi such that discarding the environment of CPM(psi) gives phi.
Purification purify(const CpMap& phi);

/// Purity-principle witness: given pure psi whose environment-discarded
/// doubling equals the pure map f_claim, returns the normalized environment
/// state v with psi = g (x) v (g the pure part of f_claim).
Mat purity_witness(const Mat& psi, std::size_t env_dim, const CpMap& f_claim);

}  // namespace cpmfrob
