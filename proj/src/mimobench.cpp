#include "adkit/mimobench.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "adkit/doa.hpp"
#include "adkit/parallel.hpp"

namespace adkit {

namespace {

constexpr double kCenterRangeDeg = 60.0;

double k_linear(const ChannelModelSpec& spec) {
    return std::isfinite(spec.rician_k_db) ? std::pow(10.0, spec.rician_k_db / 10.0) : 0.0;
}

}  // namespace

std::string to_string(ChannelModel m) {
    switch (m) {
        case ChannelModel::RichScatter: return "rich_scatter";
        case ChannelModel::Moderate: return "moderate";
        case ChannelModel::LosDominant: return "los_dominant";
    }
    return "unknown";
}

ChannelModel channel_model_from_string(const std::string& name) {
    if (name == "rich_scatter") return ChannelModel::RichScatter;
    if (name == "moderate") return ChannelModel::Moderate;
    if (name == "los_dominant") return ChannelModel::LosDominant;
    throw DomainError("unknown channel model: " + name);
}

ChannelModelSpec ChannelModelSpec::preset(ChannelModel label) {
    ChannelModelSpec s;
    s.label = label;
    switch (label) {
        case ChannelModel::RichScatter: s.azimuth_spread_deg = 53.0; break;
        case ChannelModel::Moderate: s.azimuth_spread_deg = 34.0; break;
        case ChannelModel::LosDominant:
            s.azimuth_spread_deg = 8.0;
            s.rician_k_db = 13.3;
            break;
    }
    return s;
}

void ChannelModelSpec::validate() const {
    if (!(azimuth_spread_deg > 0.0)) throw DomainError("channel model: azimuth spread must be positive");
    if (clusters < 1 || rays_per_cluster < 1) throw DomainError("channel model: cluster and ray counts must be >= 1");
}

UserGeometry draw_geometry(const ChannelModelSpec& spec, Rng& rng) {
    spec.validate();
    UserGeometry g;
    // Laplacian with RMS spread s has scale b = s / sqrt(2).
    const double b = spec.azimuth_spread_deg / std::numbers::sqrt2;
    for (int c = 0; c < spec.clusters; ++c) {
        const double center = (2.0 * rng.uniform() - 1.0) * kCenterRangeDeg;
        for (int r = 0; r < spec.rays_per_cluster; ++r) g.ray_angles_deg.push_back(center + rng.laplace(b));
    }
    g.los_angle_deg = (2.0 * rng.uniform() - 1.0) * kCenterRangeDeg;
    return g;
}

cvec channel(const ChannelModelSpec& spec, const UserGeometry& geom, int m, Rng& rng) {
    const double n_rays = static_cast<double>(geom.ray_angles_deg.size());
    cvec scatter = cvec::Zero(m);
    for (double a : geom.ray_angles_deg) scatter += rng.complex_normal(1.0 / n_rays) * steering(a, m);
    const double kl = k_linear(spec);
    if (kl == 0.0) return scatter;
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    return std::sqrt(kl / (kl + 1.0)) * std::polar(1.0, phase) * steering(geom.los_angle_deg, m) +
           std::sqrt(1.0 / (kl + 1.0)) * scatter;
}

cvec channel(const ChannelModelSpec& spec, int m, std::uint64_t seed) {
    Rng rng(seed, 0);
    const UserGeometry g = draw_geometry(spec, rng);
    return channel(spec, g, m, rng);
}

cmat channel_correlation(const ChannelModelSpec& spec, const UserGeometry& geom, int m, int draws, Rng& rng) {
    if (draws < 1) throw DomainError("channel_correlation: draws must be >= 1");
    cmat h(m, draws);
    for (int d = 0; d < draws; ++d) h.col(d) = channel(spec, geom, m, rng);
    return (h * h.adjoint()) / static_cast<double>(draws);
}

std::string to_string(ChannelEstimator e) {
    switch (e) {
        case ChannelEstimator::LS: return "LS";
        case ChannelEstimator::MMSE: return "MMSE";
        case ChannelEstimator::AD: return "AD";
    }
    return "unknown";
}

int pilots_per_user(int m, int k) {
    if (m < 1 || k < 1) throw DomainError("pilots_per_user: M and K must be >= 1");
    return (m + k - 1) / k;
}

int pilot_count(ChannelEstimator e, int m, int k) {
    return e == ChannelEstimator::AD ? k : k * pilots_per_user(m, k);
}

cvec estimate_ls(const std::vector<cvec>& pilots, double power) {
    if (pilots.empty()) throw DomainError("estimate_ls: need at least one pilot");
    cvec acc = cvec::Zero(pilots.front().size());
    for (const auto& y : pilots) acc += y;
    return acc / (static_cast<double>(pilots.size()) * std::sqrt(power));
}

cvec estimate_mmse(const std::vector<cvec>& pilots, double power, const cmat& r_h) {
    if (r_h.size() == 0) throw DomainError("estimate_mmse: missing correlation prior");
    const cvec ls = estimate_ls(pilots, power);
    const int m = static_cast<int>(ls.size());
    if (r_h.rows() != m) throw DimensionError("estimate_mmse: prior size mismatch");
    const double s2 = 1.0 / (static_cast<double>(pilots.size()) * power);
    const cmat a = r_h + s2 * cmat::Identity(m, m);
    return r_h * a.ldlt().solve(ls);
}

cvec estimate_ad(const cvec& y, double power) {
    // F_{Z_M}(y) is circulant: its eigenvectors are the unitary DFT columns f_k
    // with eigenvalues |f_k^H y|^2, so the dominant term is a projection onto one beam.
    const int m = static_cast<int>(y.size());
    int best = 0;
    double best_val = -1.0;
    cplx best_coef = 0.0;
    const double s = 1.0 / std::sqrt(static_cast<double>(m));
    for (int k = 0; k < m; ++k) {
        cplx c = 0.0;
        for (int n = 0; n < m; ++n) c += std::polar(s, -2.0 * std::numbers::pi * k * n / m) * y[n];
        if (std::norm(c) > best_val) {
            best_val = std::norm(c);
            best = k;
            best_coef = c;
        }
    }
    cvec f(m);
    for (int n = 0; n < m; ++n) f[n] = std::polar(s, 2.0 * std::numbers::pi * best * n / m);
    return f * best_coef / std::sqrt(power);
}

double mrt_sum_se(const std::vector<cvec>& channels, const std::vector<cvec>& estimates, double power) {
    const std::size_t k = channels.size();
    if (estimates.size() != k) throw DimensionError("mrt_sum_se: channel/estimate count mismatch");
    std::vector<cvec> w(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double n = estimates[j].norm();
        w[j] = n > 0 ? cvec(estimates[j] / n) : cvec::Zero(estimates[j].size());
    }
    double se = 0.0;
    for (std::size_t u = 0; u < k; ++u) {
        const double sig = std::norm(channels[u].dot(w[u])) * power;
        double interf = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            if (j != u) interf += std::norm(channels[u].dot(w[j])) * power;
        se += std::log2(1.0 + sig / (interf + 1.0));
    }
    return se;
}

ThroughputReport effective_throughput(const std::vector<cvec>& channels, const std::vector<cvec>& estimates,
                                      ChannelEstimator method, double snr_db) {
    if (channels.empty()) throw DomainError("effective_throughput: need K >= 1 users");
    ThroughputReport r;
    r.method = method;
    r.m = static_cast<int>(channels.front().size());
    r.k_users = static_cast<int>(channels.size());
    r.pilot_overhead = static_cast<double>(pilot_count(method, r.m, r.k_users)) / kResourceElements;
    r.sum_se = mrt_sum_se(channels, estimates, std::pow(10.0, snr_db / 10.0));
    r.effective = std::max(0.0, 1.0 - r.pilot_overhead) * r.sum_se;
    return r;
}

namespace {

struct Realization {
    std::vector<cvec> h, ls, mmse, ad;
};

Realization simulate(const MimoConfig& cfg, int index) {
    const double power = std::pow(10.0, cfg.snr_db / 10.0);
    const int lp = pilots_per_user(cfg.m, cfg.k);
    Realization out;
    for (int u = 0; u < cfg.k; ++u) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(index) * static_cast<std::uint64_t>(cfg.k) + u);
        const UserGeometry geom = draw_geometry(cfg.model, rng);
        const cmat r_h = channel_correlation(cfg.model, geom, cfg.m, cfg.correlation_draws, rng);
        const cvec h = channel(cfg.model, geom, cfg.m, rng);
        std::vector<cvec> pilots;
        for (int l = 0; l < lp; ++l) pilots.push_back(std::sqrt(power) * h + rng.complex_normal_vector(cfg.m, 1.0));
        out.h.push_back(h);
        out.ls.push_back(estimate_ls(pilots, power));
        out.mmse.push_back(estimate_mmse(pilots, power, r_h));
        // AD uses exactly one pilot symbol.
        out.ad.push_back(estimate_ad(pilots.front(), power));
    }
    return out;
}

}  // namespace

std::vector<ThroughputReport> run_mimo(const MimoConfig& cfg, Exec exec) {
    cfg.model.validate();
    if (cfg.realizations < 1) throw DomainError("run_mimo: realizations must be >= 1");
    const std::array<ChannelEstimator, 3> methods{ChannelEstimator::LS, ChannelEstimator::MMSE, ChannelEstimator::AD};
    std::vector<std::array<ThroughputReport, 3>> per(cfg.realizations);
    parallel_for(cfg.realizations, exec, [&](std::ptrdiff_t i) {
        const Realization r = simulate(cfg, static_cast<int>(i));
        per[i][0] = effective_throughput(r.h, r.ls, methods[0], cfg.snr_db);
        per[i][1] = effective_throughput(r.h, r.mmse, methods[1], cfg.snr_db);
        per[i][2] = effective_throughput(r.h, r.ad, methods[2], cfg.snr_db);
    });
    std::vector<ThroughputReport> out;
    for (int k = 0; k < 3; ++k) {
        ThroughputReport t = per[0][k];
        t.sum_se = 0.0;
        t.effective = 0.0;
        for (const auto& p : per) {
            t.sum_se += p[k].sum_se;
            t.effective += p[k].effective;
        }
        t.sum_se /= cfg.realizations;
        t.effective /= cfg.realizations;
        out.push_back(t);
    }
    return out;
}

MseReport channel_mse(const MimoConfig& cfg, Exec exec) {
    std::vector<std::array<double, 3>> per(cfg.realizations);
    parallel_for(cfg.realizations, exec, [&](std::ptrdiff_t i) {
        const Realization r = simulate(cfg, static_cast<int>(i));
        std::array<double, 3> e{0.0, 0.0, 0.0};
        for (int u = 0; u < cfg.k; ++u) {
            const double hn = r.h[u].squaredNorm();
            e[0] += (r.h[u] - r.ls[u]).squaredNorm() / hn;
            e[1] += (r.h[u] - r.mmse[u]).squaredNorm() / hn;
            e[2] += (r.h[u] - r.ad[u]).squaredNorm() / hn;
        }
        for (auto& v : e) v /= cfg.k;
        per[i] = e;
    });
    MseReport rep;
    for (const auto& p : per) {
        rep.ls += p[0];
        rep.mmse += p[1];
        rep.ad += p[2];
    }
    rep.ls /= cfg.realizations;
    rep.mmse /= cfg.realizations;
    rep.ad /= cfg.realizations;
    return rep;
}

}  // namespace adkit
