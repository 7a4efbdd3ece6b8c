#include "adkit/noisechar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adkit/estimators.hpp"
#include "adkit/metrics.hpp"

namespace adkit {

NoiseCharacterization natural_group(const cmat& q, const std::vector<GroupRep>& catalog) {
    if (catalog.empty()) throw DomainError("natural_group: empty catalog");
    NoiseCharacterization nc;
    nc.alpha = coloring_index(q);
    nc.residuals.reserve(catalog.size());
    for (const auto& g : catalog) nc.residuals.push_back(diag_residual(g, q));
    std::size_t best = 0;
    for (std::size_t i = 1; i < catalog.size(); ++i) {
        const double d = nc.residuals[i] - nc.residuals[best];
        if (d < -1e-12 || (std::abs(d) <= 1e-12 && catalog[i].order() < catalog[best].order())) best = i;
    }
    nc.natural_index = best;
    nc.natural_group = catalog[best].name;
    return nc;
}

rvec estimate_noise_spectrum_with(const std::vector<Observation>& snapshots, const cmat& t) {
    if (snapshots.empty()) throw DomainError("estimate_noise_spectrum: need at least one snapshot");
    const int m = static_cast<int>(t.rows());
    rvec q = rvec::Zero(m);
    for (const auto& x : snapshots) {
        if (x.size() != m) throw DimensionError("estimate_noise_spectrum: snapshot size mismatch");
        q += (t * x).cwiseAbs2();
    }
    return q / static_cast<double>(snapshots.size());
}

rvec estimate_noise_spectrum(const std::vector<Observation>& snapshots, const GroupRep& g) {
    return estimate_noise_spectrum_with(snapshots, group_transform(g));
}

rvec floor_spectrum(const rvec& q, bool* floored) {
    const double qmax = q.maxCoeff();
    if (!(qmax > 0.0) || !q.allFinite()) throw DomainError("whiten: spectrum must have a positive maximum");
    const double fl = 1e-12 * qmax;
    rvec out = q;
    bool any = false;
    for (int k = 0; k < out.size(); ++k) {
        if (out[k] < fl) {
            out[k] = fl;
            any = true;
        }
    }
    if (floored) *floored = any;
    return out;
}

cmat whitening_matrix(const cmat& t, const rvec& spectrum) {
    if (spectrum.size() != t.rows()) throw DimensionError("whiten: spectrum size mismatch");
    const rvec q = floor_spectrum(spectrum);
    const rvec s = q.cwiseSqrt().cwiseInverse();
    return t.adjoint() * s.cast<cplx>().asDiagonal() * t;
}

Observation whiten_with(const Observation& x, const cmat& t, const rvec& spectrum) {
    if (x.size() != t.rows()) throw DimensionError("whiten: observation size mismatch");
    if (spectrum.size() != t.rows()) throw DimensionError("whiten: spectrum size mismatch");
    const rvec q = floor_spectrum(spectrum);
    const cvec y = t * x;
    return t.adjoint() * y.cwiseQuotient(q.cwiseSqrt().cast<cplx>());
}

Observation whiten(const Observation& x, const GroupRep& g, const rvec& spectrum) {
    return whiten_with(x, group_transform(g), spectrum);
}

cmat noise_restricted(const CovEstimate& f, int k) {
    const int m = f.dim();
    if (k < 1 || k >= m) throw DomainError("noise_restricted: K must satisfy 1 <= K < M");
    const cmat un = f.eigenvectors.rightCols(m - k);
    return un.adjoint() * f.matrix * un;
}

namespace {

// Replaces the listed bins by the mean of their nearest unlisted circular neighbors.
rvec fill_signal_bins(const rvec& q, const std::vector<char>& is_signal) {
    const int m = static_cast<int>(q.size());
    rvec out = q;
    for (int k = 0; k < m; ++k) {
        if (!is_signal[k]) continue;
        double sum = 0.0;
        int cnt = 0;
        for (int dir : {-1, 1}) {
            for (int s = 1; s < m; ++s) {
                const int j = ((k + dir * s) % m + m) % m;
                if (!is_signal[j]) {
                    sum += q[j];
                    ++cnt;
                    break;
                }
            }
        }
        if (cnt > 0) out[k] = sum / cnt;
    }
    return out;
}

}  // namespace

RefineResult iterative_refine(const Observation& x, int k, const std::vector<GroupRep>& catalog,
                              const RefineOptions& opts) {
    validate_observation(x);
    const int m = static_cast<int>(x.size());
    if (opts.max_iter < 1) throw DomainError("iterative_refine: max_iter must be >= 1");
    if (k < 1 || k >= m) throw DomainError("iterative_refine: K must satisfy 1 <= K < M");
    if (catalog.empty()) throw DomainError("iterative_refine: empty catalog");
    const GroupRep sig = opts.signal_group ? *opts.signal_group : build_group(GroupKind::Cyclic, m);

    RefineResult res;
    res.unwhitened = group_averaged(x, sig);

    // Start from the white model in the first catalog group's coordinates.
    NoiseCharacterization model;
    model.natural_index = 0;
    model.natural_group = catalog[0].name;
    model.spectrum = rvec::Ones(m);
    cmat t = group_transform(catalog[0]);

    double prev_gap = std::numeric_limits<double>::infinity();
    int shrinking = 0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        res.iterations = it;
        const cmat w = whitening_matrix(t, model.spectrum);
        const CovEstimate fw = group_averaged(w * x, sig);

        // Noise covariance in whitened coordinates: keep the noise subspace, flatten the signal subspace.
        const cmat un = fw.eigenvectors.rightCols(m - k);
        const cmat us = fw.eigenvectors.leftCols(k);
        const double noise_mean = fw.eigenvalues.tail(m - k).mean();
        const cmat qw = un * noise_restricted(fw, k) * un.adjoint() + noise_mean * us * us.adjoint();
        const cmat winv = w.inverse();
        cmat qhat = winv * qw * winv.adjoint();
        qhat = (qhat + qhat.adjoint()) / 2.0;

        NoiseCharacterization next = natural_group(qhat, catalog);
        const cmat tn = group_transform(catalog[next.natural_index]);
        rvec q = (tn * qhat * tn.adjoint()).diagonal().real();

        // Bins dominated by the signal subspace carry signal energy, not noise.
        std::vector<char> is_signal(m, 0);
        for (int s = 0; s < k; ++s) {
            const cvec coef = tn * winv * us.col(s);
            Eigen::Index arg = 0;
            coef.cwiseAbs2().maxCoeff(&arg);
            is_signal[arg] = 1;
        }
        q = fill_signal_bins(q, is_signal);
        q /= q.mean();
        next.spectrum = floor_spectrum(q, &next.floored);

        const bool same_group = next.natural_index == model.natural_index;
        const double change = same_group ? (next.spectrum - model.spectrum).norm() / model.spectrum.norm()
                                         : std::numeric_limits<double>::infinity();
        model = std::move(next);
        t = tn;

        const double gap = (fw.eigenvalues[0] - fw.eigenvalues[std::min(k, m - 1)]) / fw.trace();
        shrinking = gap < prev_gap ? shrinking + 1 : 0;
        prev_gap = gap;
        if (shrinking >= 3) {
            res.diverged = true;
            break;
        }
        if (change < opts.rel_change) {
            res.converged = true;
            break;
        }
    }
    res.noise = model;
    res.whitened = group_averaged(whitening_matrix(t, model.spectrum) * x, sig);
    return res;
}

}  // namespace adkit
