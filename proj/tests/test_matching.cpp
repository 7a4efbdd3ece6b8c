#include <gtest/gtest.h>

#include "adkit/estimators.hpp"
#include "adkit/matching.hpp"
#include "adkit/metrics.hpp"
#include "adkit/signals.hpp"

using namespace adkit;

namespace {

cvec tone(int m, double bin) {
    cvec x(m);
    for (int n = 0; n < m; ++n) x[n] = std::polar(1.0, 2.0 * std::numbers::pi * bin * n / m);
    return x;
}

}  // namespace

TEST(Psi, OnGridToneIsOneImpulseIsOneOverM) {
    EXPECT_NEAR(cyclic_psi(tone(16, 5.0)), 1.0, 1e-12);
    cvec d = cvec::Zero(16);
    d[3] = 1.0;
    EXPECT_NEAR(cyclic_psi(d), 1.0 / 16.0, 1e-12);
}

TEST(Psi, ClosedFormMatchesEigendecomposition) {
    Rng rng(1, 0);
    const cvec x = rng.complex_normal_vector(9, 1.0);
    const GroupRep z = build_group(GroupKind::Cyclic, 9);
    EXPECT_NEAR(group_psi(x, z), spectral_concentration(group_averaged(x, z)), 1e-12);
    const GroupRep c = conjugate_group(z, haar_unitary(9, rng));
    cmat f = cmat::Zero(9, 9);
    for (std::size_t k = 0; k < 9; ++k) {
        const cvec y = c.act(k, x);
        f += y * y.adjoint() / 9.0;
    }
    EXPECT_NEAR(group_psi(x, c), spectral_concentration(CovEstimate(f)), 1e-12);
}

TEST(Psi, SpectrumIsDescendingAndSumsToMTimesEnergy) {
    Rng rng(2, 0);
    const cvec x = rng.complex_normal_vector(8, 1.0);
    const rvec p = cyclic_spectrum(x);
    for (int k = 1; k < 8; ++k) EXPECT_GE(p[k - 1], p[k]);
    EXPECT_NEAR(p.sum(), 8.0 * x.squaredNorm(), 1e-10);
}

TEST(Library, RanksMatchedGroupFirst) {
    const cvec x = tone(12, 2.0);
    const std::vector<GroupRep> cat{build_group(GroupKind::Trivial, 12), build_group(GroupKind::Cyclic, 12),
                                    build_group(GroupKind::Dihedral, 12)};
    const LibraryMatch lm = match_library(x, cat);
    ASSERT_EQ(lm.results.size(), 3u);
    EXPECT_EQ(lm.results[0].rank, 1);
    for (std::size_t i = 1; i < lm.results.size(); ++i) EXPECT_GE(lm.results[i - 1].psi, lm.results[i].psi);
    EXPECT_TRUE(lm.orbit_bias_warning);
}

TEST(ChirpRate, NoiselessEstimateIsAccurate) {
    for (double mu : {-1.2, -0.3, 0.5, 1.4}) {
        Rng rng(3, 0);
        WaveformSpec s;
        s.cls = WaveformClass::Chirp;
        s.mu = mu;
        s.f0 = 7.0;
        const ChirpRateEstimate e = estimate_chirp_rate(waveform_signal(s, rng));
        EXPECT_NEAR(e.mu_hat, mu, 0.01) << mu;
        EXPECT_NEAR(e.psi_star, 1.0, 0.05);
        EXPECT_EQ(e.grid.size(), e.psi.size());
    }
}

TEST(ChirpRate, ParallelSweepMatchesSerial) {
    Rng rng(4, 0);
    WaveformSpec s;
    s.cls = WaveformClass::Chirp;
    s.mu = 0.8;
    const Observation x = waveform(s, rng);
    const auto a = estimate_chirp_rate(x, {}, Exec::Serial);
    const auto b = estimate_chirp_rate(x, {}, Exec::Parallel);
    EXPECT_EQ(a.psi, b.psi);
    EXPECT_EQ(a.mu_hat, b.mu_hat);
}

TEST(Classifier, DecisionTreeOnFeatures) {
    EXPECT_EQ(decide({0.2, 0.0, 1.0}), WaveformDecision::NoiseLike);
    EXPECT_EQ(decide({0.9, 0.0, 50.0}), WaveformDecision::Tone);
    EXPECT_EQ(decide({0.9, 0.7, 50.0}), WaveformDecision::Chirp);
    EXPECT_EQ(decide({0.5, 0.0, 1.1}), WaveformDecision::MultiTone);
}

TEST(Classifier, NoiselessPulsesClassifiedCorrectly) {
    Rng rng(5, 0);
    WaveformSpec s;
    s.cls = WaveformClass::Tone;
    EXPECT_EQ(classify_waveform(waveform_signal(s, rng)).value, WaveformDecision::Tone);
    s.cls = WaveformClass::Chirp;
    s.mu = 0.6;
    EXPECT_EQ(classify_waveform(waveform_signal(s, rng)).value, WaveformDecision::Chirp);
    s.cls = WaveformClass::TwoTone;
    s.mu = 0.0;
    EXPECT_EQ(classify_waveform(waveform_signal(s, rng)).value, WaveformDecision::MultiTone);
}

TEST(NoStructure, ImpulseIsStructurelessToneIsNot) {
    const std::vector<GroupRep> cat{build_group(GroupKind::Trivial, 8), build_group(GroupKind::Cyclic, 8)};
    cvec d = cvec::Zero(8);
    d[0] = 1.0;
    EXPECT_TRUE(no_structure_test(d, cat, 1e-9));
    EXPECT_FALSE(no_structure_test(tone(8, 1.0), cat, 0.05));
}
