#include <gtest/gtest.h>

#include "adkit/experiments.hpp"
#include "adkit/metrics.hpp"
#include "adkit/noisechar.hpp"
#include "adkit/signals.hpp"

using namespace adkit;

namespace {

cmat circulant(const std::vector<double>& c) {
    const int m = static_cast<int>(c.size());
    cmat q(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) q(i, j) = c[((j - i) % m + m) % m];
    return q;
}

}  // namespace

TEST(NaturalGroup, IdentityTiesGoToSmallestGroup) {
    const auto cat = noise_catalog(8);
    const NoiseCharacterization nc = natural_group(cmat::Identity(8, 8), cat);
    for (double r : nc.residuals) EXPECT_LT(r, 1e-12);
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < cat.size(); ++i)
        if (cat[i].order() < cat[smallest].order()) smallest = i;
    EXPECT_EQ(cat[nc.natural_index].order(), cat[smallest].order());
    EXPECT_EQ(nc.alpha, 0.0);
}

TEST(NaturalGroup, CirculantPicksCyclic) {
    const NoiseCharacterization nc = natural_group(circulant({3.0, 1.2, 0.4, 0.1, 0.05, 0.1, 0.4, 1.2}), noise_catalog(8));
    EXPECT_EQ(nc.natural_group, "Z8");
    EXPECT_LT(nc.residuals[nc.natural_index], 1e-12);
}

TEST(NoiseCatalog, FactorizationsOfEight) {
    std::vector<std::string> names;
    for (const auto& g : noise_catalog(8)) names.push_back(g.name);
    EXPECT_EQ(names, (std::vector<std::string>{"Z8", "Z4xZ2", "Z2xZ2xZ2"}));
}

TEST(NoiseSpectrum, WhiteNoiseIsFlat) {
    const GroupRep z = build_group(GroupKind::Cyclic, 8);
    std::vector<Observation> snaps;
    for (int t = 0; t < 10000; ++t) {
        Rng rng(11, t);
        snaps.push_back(rng.complex_normal_vector(8, 2.0));
    }
    const rvec q = estimate_noise_spectrum(snaps, z);
    for (int k = 0; k < 8; ++k) EXPECT_NEAR(q[k], 2.0, 0.1);
}

TEST(Whitening, CirculantBecomesIdentity) {
    const cmat q = circulant({2.0, 0.6, 0.2, 0.1, 0.2, 0.6});
    const cmat t = dft_matrix(6);
    const rvec spec = (t * q * t.adjoint()).diagonal().real();
    const cmat w = whitening_matrix(t, spec);
    EXPECT_LT((w * q * w.adjoint() - cmat::Identity(6, 6)).norm(), 1e-12);
    const cvec x = cvec::Ones(6);
    EXPECT_LT((whiten_with(x, t, spec) - w * x).norm(), 1e-12);
}

TEST(Whitening, FloorAndZeroSpectrum) {
    rvec q(3);
    q << 1.0, 0.0, 0.5;
    bool floored = false;
    const rvec f = floor_spectrum(q, &floored);
    EXPECT_TRUE(floored);
    EXPECT_DOUBLE_EQ(f[1], 1e-12);
    EXPECT_THROW(floor_spectrum(rvec::Zero(3)), DomainError);
}

TEST(IterativeRefine, WhiteNoisePlusToneConverges) {
    Rng rng(12, 0);
    WaveformSpec s;
    s.m = 16;
    s.f0 = 3.0;
    s.snr_db = 10.0;
    const Observation x = waveform(s, rng);
    const RefineResult r = iterative_refine(x, 1, noise_catalog(16));
    EXPECT_TRUE(r.converged);
    EXPECT_FALSE(r.diverged);
    EXPECT_LE(r.iterations, 5);
    EXPECT_EQ(r.noise.spectrum.size(), 16);
    EXPECT_GT(spectral_concentration(r.whitened), 0.5);
}
