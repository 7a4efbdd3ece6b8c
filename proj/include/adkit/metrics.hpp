#pragma once

#include "adkit/groups.hpp"
#include "adkit/types.hpp"

namespace adkit {

/// Metric bundle for a (group, observation, covariance) triple.
struct MismatchReport {
    double delta = 0.0;      // commutativity residual
    double delta_abs = 0.0;  // absolute commutativity mismatch
    double alpha = 0.0;      // coloring index of R
    double psi = 0.0;        // spectral concentration of F_G(x)
};

/// ||FR - RF||_F / (||F||_F ||R||_F).
double commut_residual(const cmat& f, const cmat& r);
inline double commut_residual(const CovEstimate& f, const cmat& r) { return commut_residual(f.matrix, r); }

/// ||FR - RF||_F / ||F||_F.
double abs_mismatch(const cmat& f, const cmat& r);
inline double abs_mismatch(const CovEstimate& f, const cmat& r) { return abs_mismatch(f.matrix, r); }

/// ||Q - qbar I||_F / ||Q||_F with qbar = trace(Q) / M.
double coloring_index(const cmat& q);

/// lambda_1 / trace.
double spectral_concentration(const CovEstimate& cov);

/// Unitary T_G whose rows diagonalize matrices in the commutant of G:
/// DFT for cyclic, DCT-II for dihedral, Kronecker DFT for cyclic products,
/// eigenvectors of the group-averaged projector otherwise.
cmat group_transform(const GroupRep& g);

/// Unitary DFT matrix with entries exp(-2 pi j k n / M) / sqrt(M).
cmat dft_matrix(int m);

/// Orthonormal DCT-II matrix.
rmat dct2_matrix(int m);

/// Off-diagonal Frobenius energy of T Q T^H divided by ||Q||_F.
double diag_residual(const GroupRep& g, const cmat& q);
double diag_residual_with(const cmat& t, const cmat& q);

/// commut_residual(F_G(x), x x^H).
double sample_commut_residual(const GroupRep& g, const Observation& x);

/// sum_k (lambda_k - lambda_sigma(k))^2.
double perm_commutator_cost(const Permutation& sigma, const rvec& eigenvalues);

/// Fills every field of MismatchReport.
MismatchReport mismatch_report(const GroupRep& g, const Observation& x, const cmat& r);

}  // namespace adkit
