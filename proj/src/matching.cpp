#include "adkit/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "adkit/estimators.hpp"
#include "adkit/metrics.hpp"
#include "adkit/parallel.hpp"
#include "adkit/signals.hpp"

namespace adkit {

rvec cyclic_spectrum(const cvec& y) {
    const int m = static_cast<int>(y.size());
    rvec p(m);
    for (int k = 0; k < m; ++k) {
        cplx s = 0.0;
        for (int n = 0; n < m; ++n)
            s += y[n] * std::polar(1.0, -2.0 * std::numbers::pi * ((static_cast<long>(k) * n) % m) / m);
        p[k] = std::norm(s);
    }
    std::sort(p.data(), p.data() + m, std::greater<double>());
    return p;
}

double cyclic_psi(const cvec& y) {
    const rvec p = cyclic_spectrum(y);
    const double tot = p.sum();
    if (!(tot > 0.0)) throw DomainError("cyclic_psi: zero vector");
    return p[0] / tot;
}

double group_psi(const Observation& x, const GroupRep& g) {
    if (g.kind == GroupKind::Cyclic) return cyclic_psi(x);
    if (g.kind == GroupKind::Conjugated && g.base->kind == GroupKind::Cyclic) return cyclic_psi(g.unitary * x);
    return spectral_concentration(group_averaged(x, g));
}

namespace {

std::vector<int> orbit_signature(const GroupRep& g) {
    // Sorted orbit sizes of the index set under the group.
    if (!g.is_permutation()) return {-static_cast<int>(g.order())};
    std::vector<int> label(g.dim, -1);
    std::vector<int> sizes;
    for (int i = 0; i < g.dim; ++i) {
        if (label[i] >= 0) continue;
        std::set<int> orb;
        for (const auto& p : g.perms) orb.insert(p.map[i]);
        for (int j : orb) label[j] = i;
        sizes.push_back(static_cast<int>(orb.size()));
    }
    std::sort(sizes.begin(), sizes.end());
    sizes.push_back(static_cast<int>(g.order()));
    return sizes;
}

}  // namespace

LibraryMatch match_library(const Observation& x, const std::vector<GroupRep>& catalog) {
    if (catalog.empty()) throw DomainError("match_library: empty catalog");
    LibraryMatch out;
    const auto sig0 = orbit_signature(catalog.front());
    for (const auto& g : catalog) {
        if (g.dim != x.size()) throw DimensionError("match_library: catalog group has wrong dimension");
        out.results.push_back({g.name, group_psi(x, g), std::nullopt, 0});
        if (orbit_signature(g) != sig0) out.orbit_bias_warning = true;
    }
    std::stable_sort(out.results.begin(), out.results.end(),
                     [](const MatchResult& a, const MatchResult& b) { return a.psi > b.psi; });
    for (std::size_t i = 0; i < out.results.size(); ++i) out.results[i].rank = static_cast<int>(i) + 1;
    return out;
}

std::vector<double> MuGrid::points() const {
    if (!(step > 0.0) || hi < lo) throw DomainError("mu grid must have positive step and hi >= lo");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> p(n);
    for (long i = 0; i < n; ++i) p[i] = lo + step * i;
    return p;
}

ChirpRateEstimate estimate_chirp_rate(const Observation& x, const MuGrid& grid, Exec exec) {
    validate_observation(x);
    const int m = static_cast<int>(x.size());
    ChirpRateEstimate est;
    est.grid = grid.points();
    est.psi.resize(est.grid.size());
    parallel_for(static_cast<std::ptrdiff_t>(est.grid.size()), exec, [&](std::ptrdiff_t i) {
        const cvec y = dechirp_diag(est.grid[i], m).cwiseProduct(x);
        est.psi[i] = cyclic_psi(y);
    });
    const auto it = std::max_element(est.psi.begin(), est.psi.end());
    const std::size_t i = static_cast<std::size_t>(it - est.psi.begin());
    est.mu_hat = est.grid[i];
    est.psi_star = *it;
    if (i > 0 && i + 1 < est.psi.size()) {
        const double a = est.psi[i - 1], b = est.psi[i], c = est.psi[i + 1];
        const double den = a - 2.0 * b + c;
        if (den < 0.0) est.mu_hat += 0.5 * (a - c) / den * grid.step;
    }
    return est;
}

std::string to_string(WaveformDecision d) {
    switch (d) {
        case WaveformDecision::Tone: return "Tone";
        case WaveformDecision::Chirp: return "Chirp";
        case WaveformDecision::MultiTone: return "MultiTone";
        case WaveformDecision::NoiseLike: return "NoiseLike";
    }
    return "unknown";
}

WaveformDecision decide(const WaveformFeatures& f, const ClassifierOptions& opt) {
    if (f.psi_star <= opt.psi_noise) return WaveformDecision::NoiseLike;
    if (std::abs(f.mu_hat) >= opt.mu_chirp) return WaveformDecision::Chirp;
    if (opt.eig_ratio_refinement)
        return f.lambda_ratio >= opt.lambda_ratio_tone ? WaveformDecision::Tone : WaveformDecision::MultiTone;
    return f.psi_star > opt.psi_tone ? WaveformDecision::Tone : WaveformDecision::MultiTone;
}

WaveformVerdict classify_waveform(const Observation& x, const ClassifierOptions& opt) {
    if (x.size() < 8) throw DomainError("classify_waveform: M must be >= 8");
    const ChirpRateEstimate est = estimate_chirp_rate(x, opt.grid);
    WaveformVerdict v;
    v.features.psi_star = est.psi_star;
    v.features.mu_hat = est.mu_hat;
    const rvec p = cyclic_spectrum(dechirp_diag(est.mu_hat, static_cast<int>(x.size())).cwiseProduct(x));
    v.features.lambda_ratio = p[1] > 0.0 ? p[0] / p[1] : std::numeric_limits<double>::infinity();
    v.value = decide(v.features, opt);
    return v;
}

bool no_structure_test(const Observation& x, const std::vector<GroupRep>& catalog, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("no_structure_test: epsilon must be positive");
    double best = 0.0;
    for (const auto& g : catalog) {
        if (g.order() <= 1) continue;
        best = std::max(best, group_psi(x, g));
    }
    return best <= 1.0 / static_cast<double>(x.size()) + epsilon;
}

}  // namespace adkit
