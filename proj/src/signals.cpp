#include "adkit/signals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "adkit/doa.hpp"
#include "adkit/metrics.hpp"

namespace adkit {

Observation ula_snapshot(const UlaSpec& spec, Rng& rng) {
    if (spec.m < 2) throw DomainError("ula_snapshot: M must be >= 2");
    cvec x = cvec::Zero(spec.m);
    for (double th : spec.angles) {
        if (!(std::abs(th) < 90.0)) throw DomainError("ula_snapshot: angle must lie in (-90, 90)");
        const cplx amp = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        x += amp * steering(th, spec.m, spec.spacing);
    }
    x += rng.complex_normal_vector(spec.m, noise_variance(spec.snr_db));
    return x;
}

std::string to_string(WaveformClass c) {
    switch (c) {
        case WaveformClass::Tone: return "Tone";
        case WaveformClass::Chirp: return "Chirp";
        case WaveformClass::TwoTone: return "TwoTone";
        case WaveformClass::NoiseLike: return "NoiseLike";
    }
    return "unknown";
}

WaveformClass waveform_class_from_string(const std::string& name) {
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
    if (n == "tone") return WaveformClass::Tone;
    if (n == "chirp") return WaveformClass::Chirp;
    if (n == "twotone" || n == "two_tone" || n == "multitone") return WaveformClass::TwoTone;
    if (n == "noiselike" || n == "noise_like" || n == "noise") return WaveformClass::NoiseLike;
    throw DomainError("unknown waveform class: " + name);
}

void validate(const WaveformSpec& spec) {
    if (spec.m < 2) throw DomainError("waveform: M must be >= 2");
    if (std::abs(spec.mu) > 2.0) throw DomainError("waveform: |mu| must be <= 2");
    if (spec.f0 < 0.0 || spec.f0 >= spec.m || spec.f1 < 0.0 || spec.f1 >= spec.m)
        throw DomainError("waveform: frequencies must lie in [0, M) bins");
}

namespace {

cvec tone(double f, int m) {
    cvec s(m);
    for (int n = 0; n < m; ++n) s[n] = std::polar(1.0, 2.0 * std::numbers::pi * f * n / m);
    return s;
}

}  // namespace

Observation waveform_signal(const WaveformSpec& spec, Rng& rng) {
    validate(spec);
    const int m = spec.m;
    cvec s(m);
    switch (spec.cls) {
        case WaveformClass::Tone: s = tone(spec.f0, m); break;
        case WaveformClass::Chirp:
            for (int n = 0; n < m; ++n)
                s[n] = std::polar(1.0, std::numbers::pi * spec.mu * n * n / m + 2.0 * std::numbers::pi * spec.f0 * n / m);
            break;
        case WaveformClass::TwoTone: s = (tone(spec.f0, m) + tone(spec.f1, m)) / std::sqrt(2.0); break;
        case WaveformClass::NoiseLike: {
            // Complex Gaussian with the upper half of the DFT bins removed, renormalized to unit power.
            const cmat t = dft_matrix(m);
            cvec w = t * rng.complex_normal_vector(m, 1.0);
            for (int k = (m + 1) / 2; k < m; ++k) w[k] = 0.0;
            s = t.adjoint() * w;
            s *= std::sqrt(m / s.squaredNorm());
            break;
        }
    }
    return s * std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
}

Observation waveform(const WaveformSpec& spec, Rng& rng) {
    cvec s = waveform_signal(spec, rng);
    return s + rng.complex_normal_vector(spec.m, noise_variance(spec.snr_db));
}

cvec dechirp_diag(double mu, int m) {
    cvec d(m);
    for (int n = 0; n < m; ++n) d[n] = std::polar(1.0, -std::numbers::pi * mu * n * n / m);
    return d;
}

cmat dechirp(double mu, int m) { return dechirp_diag(mu, m).asDiagonal(); }

cmat ar1_cov(double rho, int m) {
    if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("ar1_cov: rho must lie in [0, 1)");
    cmat r(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r(i, j) = std::pow(rho, std::abs(i - j));
    return r;
}

rmat graph_filter(const Graph& g, const std::vector<double>& taps) {
    if (std::none_of(taps.begin(), taps.end(), [](double t) { return t != 0.0; }))
        throw DomainError("graph_filter: at least one tap must be nonzero");
    rmat h = rmat::Zero(g.n, g.n);
    rmat p = rmat::Identity(g.n, g.n);
    for (double t : taps) {
        h += t * p;
        p = p * g.adjacency;
    }
    return h;
}

Observation graph_signal(const GraphSignalSpec& spec, Rng& rng) {
    const rmat h = graph_filter(spec.graph, spec.filter_taps);
    const int n = spec.graph.n;
    const double sig_power = (h * h.transpose()).trace() / n;
    cvec x = h.cast<cplx>() * rng.complex_normal_vector(n, 1.0);
    x += rng.complex_normal_vector(n, sig_power * noise_variance(spec.snr_db));
    return x;
}

cmat psd_sqrt(const cmat& q) {
    const cmat h = (q + q.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<cmat> es(h);
    const double tr = std::abs(h.trace().real());
    if (es.eigenvalues().minCoeff() < -1e-10 * (tr > 0 ? tr : 1.0)) throw DomainError("matrix is not PSD");
    const rvec s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * s.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Observation colored_noise(const cmat& q, Rng& rng) {
    return psd_sqrt(q) * rng.complex_normal_vector(static_cast<int>(q.rows()), 1.0);
}

cmat haar_unitary(int m, Rng& rng) {
    cmat z(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) z(i, j) = rng.complex_normal(1.0);
    Eigen::HouseholderQR<cmat> qr(z);
    cmat q = qr.householderQ();
    const cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < m; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0.0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

}  // namespace adkit
