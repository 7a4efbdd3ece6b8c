#include <gtest/gtest.h>

#include "adkit/doa.hpp"
#include "adkit/signals.hpp"

using namespace adkit;

TEST(Steering, UnitModulusAndPhaseProgression) {
    const cvec a = steering(30.0, 6, 0.5);
    EXPECT_EQ(a[0], cplx(1.0));
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(std::abs(a[k]), 1.0, 1e-15);
    EXPECT_LT(std::abs(a[1] - std::polar(1.0, std::numbers::pi * 0.5)), 1e-14);
}

TEST(AngleGrid, PointsIncludeEndpoints) {
    const auto p = AngleGrid{-10.0, 10.0, 0.5}.points();
    EXPECT_EQ(p.size(), 41u);
    EXPECT_DOUBLE_EQ(p.front(), -10.0);
    EXPECT_NEAR(p.back(), 10.0, 1e-12);
    EXPECT_THROW((AngleGrid{0.0, 1.0, 0.0}.points()), DomainError);
}

TEST(Music, NoiselessRankOnePeakAtTruth) {
    Rng rng(1, 0);
    const Observation x = ula_snapshot({10, 0.5, {17.3}, 300.0}, rng);
    const Pseudospectrum p = covariance_music(x, 1);
    ASSERT_FALSE(p.peaks.empty());
    EXPECT_NEAR(p.peaks.front().angle, 17.3, 0.05);
}

TEST(Music, CyclicAverageOnGridSourceFoundExactly) {
    // sin(theta) = 2k/M puts the source on a DFT bin, an eigenvector of every circulant.
    const double theta = std::asin(0.4) * 180.0 / std::numbers::pi;
    Rng rng(2, 0);
    const Observation x = ula_snapshot({10, 0.5, {theta}, 40.0}, rng);
    const Pseudospectrum p = cg_music(x, build_group(GroupKind::Cyclic, 10), 1);
    ASSERT_FALSE(p.peaks.empty());
    EXPECT_NEAR(p.peaks.front().angle, theta, 0.1);
}

TEST(Music, PeaksSortedAndSeparated) {
    Rng rng(3, 0);
    const Observation x = ula_snapshot({12, 0.5, {-20.0, 35.0}, 20.0}, rng);
    const Pseudospectrum p = cg_music(x, build_group(GroupKind::Cyclic, 12), 2, {}, 0.5, Exec::Serial);
    EXPECT_EQ(p.grid.size(), p.values.size());
    for (std::size_t i = 1; i < p.peaks.size(); ++i) EXPECT_GE(p.peaks[i - 1].value, p.peaks[i].value);
    const auto sig = significant_peaks(p, 0.5);
    for (const auto& s : sig) EXPECT_GE(s.value, 0.5 * p.peaks.front().value);
}

TEST(Music, RejectsInvalidSignalCount) {
    Rng rng(4, 0);
    const Observation x = ula_snapshot({6, 0.5, {10.0}, 10.0}, rng);
    EXPECT_THROW(covariance_music(x, 0), DomainError);
    EXPECT_THROW(covariance_music(x, 6), DomainError);
}
