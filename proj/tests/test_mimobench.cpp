#include <gtest/gtest.h>

#include "adkit/mimobench.hpp"

using namespace adkit;

TEST(Pilots, CountsPerMethod) {
    EXPECT_EQ(pilots_per_user(64, 4), 16);
    EXPECT_EQ(pilots_per_user(10, 4), 3);
    EXPECT_EQ(pilot_count(ChannelEstimator::LS, 64, 4), 64);
    EXPECT_EQ(pilot_count(ChannelEstimator::MMSE, 10, 4), 12);
    EXPECT_EQ(pilot_count(ChannelEstimator::AD, 64, 4), 4);
}

TEST(Channel, MeanPowerIsM) {
    for (ChannelModel label : {ChannelModel::RichScatter, ChannelModel::Moderate, ChannelModel::LosDominant}) {
        const ChannelModelSpec spec = ChannelModelSpec::preset(label);
        double s = 0.0;
        const int n = 4000;
        for (int t = 0; t < n; ++t) s += channel(spec, 16, static_cast<std::uint64_t>(t)).squaredNorm();
        EXPECT_NEAR(s / n / 16.0, 1.0, 0.05) << to_string(label);
    }
}

TEST(Channel, ModelNamesRoundTripAndValidate) {
    for (ChannelModel label : {ChannelModel::RichScatter, ChannelModel::Moderate, ChannelModel::LosDominant})
        EXPECT_EQ(channel_model_from_string(to_string(label)), label);
    EXPECT_THROW(channel_model_from_string("urban"), DomainError);
    ChannelModelSpec bad;
    bad.clusters = 0;
    EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Estimators, LeastSquaresExactWithoutNoise) {
    Rng rng(1, 0);
    const cvec h = rng.complex_normal_vector(8, 1.0);
    const double p = 4.0;
    const std::vector<cvec> pilots{std::sqrt(p) * h, std::sqrt(p) * h};
    EXPECT_LT((estimate_ls(pilots, p) - h).norm(), 1e-12);
}

TEST(Estimators, AdRecoversRankOneDirection) {
    Rng rng(2, 0);
    cvec h(16);
    for (int i = 0; i < 16; ++i) h[i] = std::polar(1.0, 2.0 * std::numbers::pi * 3.0 * i / 16.0);
    const double p = 10.0;
    const cvec e = estimate_ad(std::sqrt(p) * h, p);
    EXPECT_LT((e - h).norm() / h.norm(), 1e-10);
}

TEST(Throughput, SingleUserMrtWithPerfectEstimate) {
    Rng rng(3, 0);
    const cvec h = rng.complex_normal_vector(8, 1.0);
    const double p = 2.0;
    EXPECT_NEAR(mrt_sum_se({h}, {h}, p), std::log2(1.0 + p * h.squaredNorm()), 1e-12);
}

TEST(Throughput, EffectiveAccountsForPilotOverhead) {
    Rng rng(4, 0);
    std::vector<cvec> hs;
    for (int k = 0; k < 4; ++k) hs.push_back(rng.complex_normal_vector(16, 1.0));
    const ThroughputReport r = effective_throughput(hs, hs, ChannelEstimator::LS, 10.0);
    EXPECT_NEAR(r.pilot_overhead, 16.0 / 168.0, 1e-15);
    EXPECT_NEAR(r.effective, (1.0 - 16.0 / 168.0) * r.sum_se, 1e-12);
    const ThroughputReport a = effective_throughput(hs, hs, ChannelEstimator::AD, 10.0);
    EXPECT_NEAR(a.pilot_overhead, 4.0 / 168.0, 1e-15);
    EXPECT_GT(a.effective, r.effective);
}
