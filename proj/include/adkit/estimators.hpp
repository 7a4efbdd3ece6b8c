#pragma once

#include <vector>

#include "adkit/groups.hpp"
#include "adkit/types.hpp"

namespace adkit {

/// F_G(x) = (1/|G|) sum_g (rho(g) x)(rho(g) x)^H.
CovEstimate group_averaged(const Observation& x, const GroupRep& g);

/// Unsymmetrized matrix form of group_averaged, without the eigendecomposition.
cmat group_averaged_matrix(const Observation& x, const GroupRep& g);

/// Mean of the rank-one terms built from an explicit list of permutations.
cmat average_outer(const Observation& x, const std::vector<Permutation>& perms);

/// PASE estimate with n terms. The first min(n, |G|) terms are the group
/// elements in order; any surplus is drawn from S_M by the given ordering.
CovEstimate pase(const Observation& x, const GroupRep& g, std::size_t n, const OrderingStrategy& surplus);

/// Cayley autocorrelation matrix: entry (i, j) = x[g_j(i)].
cmat cayley_matrix(const Observation& x, const GroupRep& g);

struct EigSnr {
    double db = 0.0;
    bool degenerate = false;  // noise mean hit the clamp
};

/// 10 log10(lambda_1 / mean(lambda_{K+1..M})), with the mean clamped at 1e-15 * trace.
EigSnr eig_snr(const CovEstimate& cov, int k);

/// Exact expectation of (P x)(P x)^H over uniform P in S_M.
CovEstimate sm_expectation(const Observation& x);

enum class StatisticKind { OuterProduct, Moment };

struct Statistic {
    StatisticKind kind = StatisticKind::OuterProduct;
    int order = 1;  // moment order k for Moment
};

/// Number of distinct statistic values over the orbit of x (relative tolerance 1e-9).
int effective_group_order(const Statistic& f, const GroupRep& g, const Observation& x);

/// Rejects observations with zero norm or non-finite entries.
void validate_observation(const Observation& x);

}  // namespace adkit
