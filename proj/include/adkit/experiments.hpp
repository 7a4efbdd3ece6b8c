#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "adkit/doa.hpp"
#include "adkit/graph.hpp"
#include "adkit/groups.hpp"
#include "adkit/matching.hpp"
#include "adkit/mimobench.hpp"
#include "adkit/signals.hpp"
#include "adkit/types.hpp"

namespace adkit {

inline constexpr const char* kToolkitVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Typed studies. Every randomized study draws trial t from Rng(seed, t).
// ---------------------------------------------------------------------------

/// Mean eig_snr (K = 1) of the average over the first n permutations of each
/// ordering, for a single ULA source. Rows follow `ns`, columns follow `variants`.
struct OrderingStudy {
    std::vector<int> ns;
    std::vector<OrderingVariant> variants;
    std::vector<std::vector<double>> mean_db;  // [n index][variant index]
};
OrderingStudy ordering_study(int m, double angle_deg, double snr_db, const std::vector<int>& ns, int trials,
                             std::uint64_t seed, Exec exec = Exec::Parallel);

/// Mean eig_snr of the PASE estimator with the matched cyclic group, surplus from S_M.
std::vector<double> pase_study(int m, double angle_deg, double snr_db, const std::vector<int>& ns, int trials,
                               std::uint64_t seed, Exec exec = Exec::Parallel);

struct TwoSignalResult {
    std::vector<Peak> cg_peaks;
    std::vector<Peak> cov_peaks;          // K = 2 baseline on x x^H
    std::vector<double> cg_eigenvalues;
    std::vector<double> cov_eigenvalues;
    int cov_significant_peaks = 0;        // peaks above 1e-3 of the maximum
};
TwoSignalResult music_two_signal(int m, const std::vector<double>& angles, double snr_db, std::uint64_t seed);

struct BiasVariance {
    double cov_bias = 0.0, cov_std = 0.0;
    double cg_bias = 0.0, cg_std = 0.0;
};
BiasVariance music_bias_variance(int m, double angle_deg, double noise_power, int trials, std::uint64_t seed,
                                 Exec exec = Exec::Parallel);

struct ChirpConcentration {
    double psi_adapted = 0.0;  // mean psi* at the blind estimate
    double psi_cyclic = 0.0;   // mean psi of Z_M
    double ratio = 0.0;        // mean ratio of the two
    double mu_rmse = 0.0;
};
ChirpConcentration chirp_concentration(int m, double mu, double snr_db, int trials, std::uint64_t seed,
                                       Exec exec = Exec::Parallel);

/// Fraction of pulses of class `cls` classified correctly.
double class_accuracy(WaveformClass cls, double snr_db, int trials, std::uint64_t seed,
                      const ClassifierOptions& opts = {}, Exec exec = Exec::Parallel);

/// FFT-feature baseline classifier (spectral flatness, peak-to-mean, peak count).
WaveformDecision fft_classify(const Observation& x);

/// Agile source stream: 40% chirps, 25% tones, 20% two-tone, 15% noise-like.
struct AgileStudy {
    std::vector<double> cumulative_ad;   // per pulse index, averaged over sequences
    std::vector<double> cumulative_fft;
    double overall_ad = 0.0;
    double overall_fft = 0.0;
};
AgileStudy agile_source_study(int pulses, double snr_db, int sequences, std::uint64_t seed,
                              Exec exec = Exec::Parallel);

struct S3Advantage {
    double psi_s3 = 0.0;
    double psi_best_conjugated = 0.0;
    double advantage = 0.0;         // psi_s3 / psi_best - 1
    double schur_offdiag = 0.0;     // max relative non-scalar part of the 2-D irrep block over trials
    double population_block = 0.0;  // scalar value of the block for the population covariance
};
/// psi of the S3 automorphism estimator against the best of N Haar-conjugated cyclic groups,
/// where "best" is the conjugation with the largest mean psi over the same trials.
S3Advantage s3_advantage(const Graph& g, const std::vector<Permutation>& s3, const std::vector<double>& taps,
                         double snr_db, int trials, int conjugations, std::uint64_t seed,
                         Exec exec = Exec::Parallel);

/// S3 acting on vertices {1, 2, 3} of the C5 candidate graph.
std::vector<Permutation> c5_s3_elements();

/// Mean (eig_snr - input SNR) of the cyclic group average of an on-grid tone.
double processing_gain_study(int m, double snr_db, int trials, std::uint64_t seed, Exec exec = Exec::Parallel);

struct GaatSlopes {
    std::vector<int> ms;
    std::vector<std::vector<double>> variance;  // [moment k-1][m index]
    std::vector<double> slopes;                  // per moment
};
GaatSlopes gaat_slopes(const std::vector<int>& ms, int moments, int trials, std::uint64_t seed,
                       Exec exec = Exec::Parallel);

struct GaatContinuumRow {
    int d_eff = 0;
    int l = 0;
    double var_m1_times_budget = 0.0;
    double var_m4_times_budget = 0.0;
};
std::vector<GaatContinuumRow> gaat_continuum(const std::vector<std::pair<int, int>>& configs, int trials,
                                             std::uint64_t seed, Exec exec = Exec::Parallel);

struct GaatGroupRatios {
    std::vector<double> z_over_d;   // per moment
    std::vector<double> z_over_zz;  // per moment
};
/// Moment variances under Z_M, D_M and Z_a x Z_b with common random numbers per trial.
GaatGroupRatios gaat_group_ratios(int m, int a, int b, int moments, int trials, std::uint64_t seed,
                                  Exec exec = Exec::Parallel);

/// Uniform integer data in [-1000, 1000].
cvec gaat_data(int m, Rng& rng);

struct ColoredNoiseStudy {
    std::vector<std::string> groups;
    std::vector<double> residuals;
    std::string natural;
    double whitened_alpha = 0.0;  // coloring index of the empirical whitened covariance
};
/// AR(1) natural-group identification plus empirical whitening check on circulant noise.
ColoredNoiseStudy colored_noise_study(double rho, int m, int draws, std::uint64_t seed);

/// Catalog used for natural-group identification: Z_M plus the direct products of cyclic factors of M.
std::vector<GroupRep> noise_catalog(int m);

// ---------------------------------------------------------------------------
// Result tables and the experiment registry.
// ---------------------------------------------------------------------------

using Cell = std::variant<long long, double, std::string>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentOutput {
    ResultTable table;
    /// Secondary tables written next to the main CSV as <stem>_<key>.csv.
    std::map<std::string, ResultTable> extra;
    std::vector<Check> checks;
    nlohmann::json summary = nlohmann::json::object();
};

struct RunOptions {
    std::uint64_t seed = 1;
    std::optional<int> trials;
    Exec exec = Exec::Parallel;
};

/// Raised for invalid experiment names, parameters or config files.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentInfo {
    std::string name;
    std::string description;
    std::vector<std::string> columns;
    int default_trials = 1;
    nlohmann::json defaults;  // accepted parameter keys and default values
    std::function<ExperimentOutput(const nlohmann::json& params, int trials, const RunOptions& opt)> run;
};

const std::vector<ExperimentInfo>& experiment_registry();
const ExperimentInfo& find_experiment(const std::string& name);

/// Merges user parameters into the defaults; unknown keys raise ConfigError.
nlohmann::json merge_parameters(const ExperimentInfo& info, const nlohmann::json& user);

/// Runs an experiment from a parsed config object. Recognized top-level keys:
/// "experiment", "seed", "trials", "parameters", "output".
ExperimentOutput run_experiment(const std::string& name, const nlohmann::json& config, const RunOptions& opt);

void write_csv(std::ostream& out, const ResultTable& table);
std::string format_cell(const Cell& c);

}  // namespace adkit
