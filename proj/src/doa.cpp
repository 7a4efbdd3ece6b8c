#include "adkit/doa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "adkit/estimators.hpp"
#include "adkit/parallel.hpp"

namespace adkit {

cvec steering(double theta_deg, int m, double spacing) {
    const double s = std::sin(theta_deg * std::numbers::pi / 180.0);
    cvec a(m);
    for (int k = 0; k < m; ++k) a[k] = std::polar(1.0, 2.0 * std::numbers::pi * spacing * k * s);
    return a;
}

std::vector<double> AngleGrid::points() const {
    if (!(step > 0.0) || stop < start) throw DomainError("angle grid must have positive step and stop >= start");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> p(n);
    for (long i = 0; i < n; ++i) p[i] = start + step * i;
    return p;
}

namespace {

std::vector<Peak> extract_peaks(const std::vector<double>& grid, const std::vector<double>& v, double min_sep) {
    const std::size_t n = v.size();
    std::vector<Peak> cand;
    for (std::size_t i = 0; i < n; ++i) {
        const bool left = i == 0 || v[i] >= v[i - 1];
        const bool right = i + 1 == n || v[i] > v[i + 1];
        if (!(left && right) || i == 0 || i + 1 == n) continue;
        // Three-point parabolic refinement around the discrete maximum.
        const double a = v[i - 1], b = v[i], c = v[i + 1];
        const double den = a - 2.0 * b + c;
        double off = 0.0, val = b;
        if (den < 0.0) {
            off = 0.5 * (a - c) / den;
            val = b - 0.25 * (a - c) * off;
        }
        const double step = grid[i + 1] - grid[i];
        cand.push_back({grid[i] + off * step, val});
    }
    std::sort(cand.begin(), cand.end(), [](const Peak& p, const Peak& q) { return p.value > q.value; });
    std::vector<Peak> out;
    for (const auto& p : cand) {
        bool ok = true;
        for (const auto& q : out)
            if (std::abs(p.angle - q.angle) < min_sep) ok = false;
        if (ok) out.push_back(p);
    }
    return out;
}

}  // namespace

Pseudospectrum music_from_estimate(const CovEstimate& est, int k, const AngleGrid& grid, double spacing,
                                   double min_sep, Exec exec) {
    const int m = est.dim();
    if (k < 1 || k >= m) throw DomainError("music: K must satisfy 1 <= K < M");
    const cmat un = est.eigenvectors.rightCols(m - k);
    Pseudospectrum ps;
    ps.grid = grid.points();
    ps.values.resize(ps.grid.size());
    parallel_for(static_cast<std::ptrdiff_t>(ps.grid.size()), exec, [&](std::ptrdiff_t i) {
        const cvec a = steering(ps.grid[i], m, spacing);
        const double d = (un.adjoint() * a).squaredNorm();
        ps.values[i] = 1.0 / std::max(d, 1e-300);
    });
    ps.peaks = extract_peaks(ps.grid, ps.values, min_sep);
    return ps;
}

Pseudospectrum cg_music(const Observation& x, const GroupRep& g, int k, const AngleGrid& grid, double spacing,
                        Exec exec) {
    return music_from_estimate(group_averaged(x, g), k, grid, spacing, 1.0, exec);
}

Pseudospectrum covariance_music(const Observation& x, int k, const AngleGrid& grid, double spacing, Exec exec) {
    validate_observation(x);
    return music_from_estimate(CovEstimate(x * x.adjoint()), k, grid, spacing, 1.0, exec);
}

std::vector<Peak> significant_peaks(const Pseudospectrum& p, double rel_floor) {
    std::vector<Peak> out;
    if (p.peaks.empty()) return out;
    const double top = p.peaks.front().value;
    for (const auto& q : p.peaks)
        if (q.value >= rel_floor * top) out.push_back(q);
    return out;
}

}  // namespace adkit
