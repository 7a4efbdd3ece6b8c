#pragma once

#include <vector>

#include "adkit/graph.hpp"
#include "adkit/rng.hpp"
#include "adkit/types.hpp"

namespace adkit {

/// Uniform linear array scenario.
struct UlaSpec {
    int m = 10;
    double spacing = 0.5;          // wavelengths
    std::vector<double> angles;    // degrees, each in (-90, 90)
    double snr_db = 10.0;          // per-source, per-element
};

/// x = A s + n with unit-modulus random-phase sources and white complex Gaussian noise.
Observation ula_snapshot(const UlaSpec& spec, Rng& rng);

enum class WaveformClass { Tone, Chirp, TwoTone, NoiseLike };

std::string to_string(WaveformClass c);
WaveformClass waveform_class_from_string(const std::string& name);

/// Pulse of M samples. Frequencies are in DFT-bin units: a tone at f has phase 2 pi f n / M.
struct WaveformSpec {
    WaveformClass cls = WaveformClass::Tone;
    int m = 31;
    double mu = 0.0;      // chirp rate, Chirp only, |mu| <= 2
    double f0 = 0.15;     // bins, in [0, M)
    double f1 = 10.15;    // bins, TwoTone only
    double snr_db = 10.0;
};

void validate(const WaveformSpec& spec);

/// Noise-free unit-power pulse (random global phase drawn from rng).
Observation waveform_signal(const WaveformSpec& spec, Rng& rng);

/// Pulse plus white noise at the requested per-sample SNR.
Observation waveform(const WaveformSpec& spec, Rng& rng);

/// Diagonal of the dechirp operator U(mu): exp(-j pi mu n^2 / M).
cvec dechirp_diag(double mu, int m);

/// Dense M x M dechirp operator.
cmat dechirp(double mu, int m);

/// Toeplitz AR(1) covariance with entries rho^|i-j|.
cmat ar1_cov(double rho, int m);

struct GraphSignalSpec {
    Graph graph;
    std::vector<double> filter_taps{1.0};  // h(A) = sum_k h_k A^k
    double snr_db = 15.0;
};

/// Polynomial graph filter h(A).
rmat graph_filter(const Graph& g, const std::vector<double>& taps);

/// x = h(A) w + n with noise power set from the population filtered-signal power.
Observation graph_signal(const GraphSignalSpec& spec, Rng& rng);

/// Q^{1/2} w for white w.
Observation colored_noise(const cmat& q, Rng& rng);

/// Hermitian square root of a PSD matrix; throws on non-PSD input.
cmat psd_sqrt(const cmat& q);

/// Haar-distributed random unitary (QR of a complex Gaussian matrix with phase correction).
cmat haar_unitary(int m, Rng& rng);

/// Noise variance for unit signal power at the given SNR.
inline double noise_variance(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

}  // namespace adkit
