#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adkit/groups.hpp"
#include "adkit/types.hpp"

namespace adkit {

struct MatchResult {
    std::string group_id;
    double psi = 0.0;
    std::optional<double> mu_hat;
    int rank = 0;  // 1 = highest psi
};

struct LibraryMatch {
    std::vector<MatchResult> results;  // descending psi
    /// Set when catalog groups differ in order or orbit structure, where psi rankings are biased.
    bool orbit_bias_warning = false;
};

/// Ranks catalog groups by psi(F_G(x)).
LibraryMatch match_library(const Observation& x, const std::vector<GroupRep>& catalog);

/// psi(F_G(x)). Cyclic groups and groups conjugated from a cyclic group use the
/// closed form max_k |Y_k|^2 / sum_k |Y_k|^2 with Y the DFT of U x; others eigendecompose.
double group_psi(const Observation& x, const GroupRep& g);

/// Closed-form psi of the cyclic group average of y.
double cyclic_psi(const cvec& y);

/// Descending power spectrum |Y_k|^2 of y (unnormalized DFT).
rvec cyclic_spectrum(const cvec& y);

struct MuGrid {
    double lo = -2.0;
    double hi = 2.0;
    double step = 0.01;
    std::vector<double> points() const;
};

struct ChirpRateEstimate {
    double mu_hat = 0.0;
    double psi_star = 0.0;
    std::vector<double> grid;
    std::vector<double> psi;
};

/// Sweeps psi(conj(Z_M, dechirp(mu)), x) over the grid and refines the argmax with one parabolic step.
ChirpRateEstimate estimate_chirp_rate(const Observation& x, const MuGrid& grid = {}, Exec exec = Exec::Serial);

enum class WaveformDecision { Tone, Chirp, MultiTone, NoiseLike };
std::string to_string(WaveformDecision d);

struct WaveformFeatures {
    double psi_star = 0.0;
    double mu_hat = 0.0;
    double lambda_ratio = 0.0;  // lambda_1 / lambda_2 of the adapted estimator
};

struct WaveformVerdict {
    WaveformDecision value = WaveformDecision::NoiseLike;
    WaveformFeatures features;
};

struct ClassifierOptions {
    bool eig_ratio_refinement = false;
    double psi_noise = 0.4;
    double psi_tone = 0.6;
    double mu_chirp = 0.1;
    double lambda_ratio_tone = 2.0;
    MuGrid grid;
};

/// Four-class decision tree on (psi*, |mu_hat|), with an optional lambda_1/lambda_2 split of the tonal branch.
WaveformVerdict classify_waveform(const Observation& x, const ClassifierOptions& opt = {});

/// Applies the decision tree to precomputed features.
WaveformDecision decide(const WaveformFeatures& f, const ClassifierOptions& opt = {});

/// True iff max_G psi(F_G(x)) <= 1/M + epsilon. Trivial groups are skipped.
bool no_structure_test(const Observation& x, const std::vector<GroupRep>& catalog, double epsilon);

}  // namespace adkit
