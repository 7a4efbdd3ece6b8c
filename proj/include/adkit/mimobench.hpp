#pragma once

#include <limits>
#include <string>
#include <vector>

#include "adkit/rng.hpp"
#include "adkit/types.hpp"

namespace adkit {

enum class ChannelModel { RichScatter, Moderate, LosDominant };

std::string to_string(ChannelModel m);
ChannelModel channel_model_from_string(const std::string& name);

/// Simplified clustered-ray channel: equal-power clusters of rays with
/// Laplacian angular offsets, plus an optional Rician line-of-sight term.
struct ChannelModelSpec {
    ChannelModel label = ChannelModel::RichScatter;
    double azimuth_spread_deg = 53.0;
    double rician_k_db = -std::numeric_limits<double>::infinity();
    int clusters = 6;
    int rays_per_cluster = 10;

    static ChannelModelSpec preset(ChannelModel label);
    void validate() const;
};

/// Large-scale geometry of one user: fixed ray angles and line-of-sight angle.
struct UserGeometry {
    std::vector<double> ray_angles_deg;
    double los_angle_deg = 0.0;
};

UserGeometry draw_geometry(const ChannelModelSpec& spec, Rng& rng);

/// One small-scale draw over a fixed geometry (ray gains and LOS phase redrawn), E||h||^2 = M.
cvec channel(const ChannelModelSpec& spec, const UserGeometry& geom, int m, Rng& rng);

/// Geometry and small-scale draw from a single seed.
cvec channel(const ChannelModelSpec& spec, int m, std::uint64_t seed);

/// Sample spatial correlation E[h h^H] over `draws` small-scale realizations.
cmat channel_correlation(const ChannelModelSpec& spec, const UserGeometry& geom, int m, int draws, Rng& rng);

enum class ChannelEstimator { LS, MMSE, AD };

std::string to_string(ChannelEstimator e);

/// Pilots per user for LS/MMSE: ceil(M / K).
int pilots_per_user(int m, int k);

/// Total pilot symbols: K * ceil(M / K) for LS/MMSE, K for AD.
int pilot_count(ChannelEstimator e, int m, int k);

/// Resource elements per resource block per slot.
constexpr int kResourceElements = 168;

/// Average of y_l / sqrt(P).
cvec estimate_ls(const std::vector<cvec>& pilots, double power);

/// R (R + sigma^2 I)^{-1} ybar / sqrt(P), sigma^2 = 1 / (L P).
cvec estimate_mmse(const std::vector<cvec>& pilots, double power, const cmat& r_h);

/// Dominant eigenvector of F_{Z_M}(y), scaled by sqrt(lambda_1 / P), with the
/// phase aligned to y.
cvec estimate_ad(const cvec& y, double power);

/// Sum spectral efficiency of MRT beamforming built from the estimates.
/// SINR_k = |h_k^H w_k|^2 P / (sum_{j != k} |h_k^H w_j|^2 P + 1).
double mrt_sum_se(const std::vector<cvec>& channels, const std::vector<cvec>& estimates, double power);

struct ThroughputReport {
    ChannelEstimator method = ChannelEstimator::LS;
    int m = 0;
    int k_users = 0;
    double pilot_overhead = 0.0;
    double sum_se = 0.0;
    double effective = 0.0;
};

ThroughputReport effective_throughput(const std::vector<cvec>& channels, const std::vector<cvec>& estimates,
                                      ChannelEstimator method, double snr_db);

struct MimoConfig {
    ChannelModelSpec model;
    int m = 64;
    int k = 4;
    double snr_db = 15.0;
    int realizations = 50;
    int correlation_draws = 1000;
    std::uint64_t seed = 1;
};

/// Mean LS, MMSE and AD reports over independent realizations (in that order).
std::vector<ThroughputReport> run_mimo(const MimoConfig& cfg, Exec exec = Exec::Parallel);

struct MseReport {
    double ls = 0.0;
    double mmse = 0.0;
    double ad = 0.0;
};

/// Mean normalized estimation error ||h - h_hat||^2 / ||h||^2 per method.
MseReport channel_mse(const MimoConfig& cfg, Exec exec = Exec::Parallel);

}  // namespace adkit
