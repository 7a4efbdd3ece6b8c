#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adkit/groups.hpp"
#include "adkit/types.hpp"

namespace adkit {

/// Result of identifying the group that best diagonalizes a noise covariance.
struct NoiseCharacterization {
    std::size_t natural_index = 0;   // position in the catalog
    std::string natural_group;       // catalog name of the winner
    std::vector<double> residuals;   // diag_residual per catalog entry
    double alpha = 0.0;              // coloring index of Q
    rvec spectrum;                   // estimated q_k, empty when not estimated
    bool floored = false;            // some spectrum entries were raised to the floor
};

/// Argmin of diag_residual(G, Q) over the catalog; ties within 1e-12 go to the smaller group.
NoiseCharacterization natural_group(const cmat& q, const std::vector<GroupRep>& catalog);

/// q_k = (1/L) sum_t |[T_G x_t]_k|^2.
rvec estimate_noise_spectrum(const std::vector<Observation>& snapshots, const GroupRep& g);
rvec estimate_noise_spectrum_with(const std::vector<Observation>& snapshots, const cmat& t);

/// Floors entries at 1e-12 * max(q). Throws when max(q) is not positive.
rvec floor_spectrum(const rvec& q, bool* floored = nullptr);

/// T^H diag(q^{-1/2}) T x.
Observation whiten(const Observation& x, const GroupRep& g, const rvec& spectrum);
Observation whiten_with(const Observation& x, const cmat& t, const rvec& spectrum);

/// Dense whitening operator T^H diag(q^{-1/2}) T.
cmat whitening_matrix(const cmat& t, const rvec& spectrum);

/// U_n^H F U_n over the trailing M - K eigenvectors of F.
cmat noise_restricted(const CovEstimate& f, int k);

struct RefineOptions {
    int max_iter = 5;
    double rel_change = 0.01;
    /// Group used to average the whitened observation (Z_M when empty).
    std::optional<GroupRep> signal_group;
};

struct RefineResult {
    NoiseCharacterization noise;
    CovEstimate whitened;          // group-averaged estimate of the whitened observation
    CovEstimate unwhitened;        // group-averaged estimate of x itself
    int iterations = 0;
    bool converged = false;
    bool diverged = false;
};

/// EM-like alternation: whiten with the current noise model, group-average,
/// split off the K-dimensional signal subspace, re-estimate the noise
/// covariance from the remainder, re-identify its natural group and spectrum.
/// Transform bins occupied by the signal take the mean of their circular
/// neighbors, so the spectrum reflects noise only.
RefineResult iterative_refine(const Observation& x, int k, const std::vector<GroupRep>& catalog,
                              const RefineOptions& opts = {});

}  // namespace adkit
