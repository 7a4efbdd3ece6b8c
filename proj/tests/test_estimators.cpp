#include <gtest/gtest.h>

#include "adkit/estimators.hpp"
#include "adkit/metrics.hpp"

using namespace adkit;

namespace {

cvec sample(int m, std::uint64_t stream) {
    Rng rng(11, stream);
    return rng.complex_normal_vector(m, 1.0);
}

}  // namespace

TEST(GroupAveraged, TrivialGroupIsOuterProduct) {
    const cvec x = sample(6, 0);
    const CovEstimate f = group_averaged(x, build_group(GroupKind::Trivial, 6));
    EXPECT_LE((f.matrix - x * x.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(spectral_concentration(f), 1.0, 1e-14);
}

TEST(GroupAveraged, CyclicMatchesHandComputedCirculant) {
    const int m = 5;
    const cvec x = sample(m, 1);
    const CovEstimate f = group_averaged(x, build_group(GroupKind::Cyclic, m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < m; ++k) s += x[(i + k) % m] * std::conj(x[(j + k) % m]);
            EXPECT_LT(std::abs(f.matrix(i, j) - s / double(m)), 1e-12);
        }
    // Circulant: constant along wrapped diagonals.
    for (int i = 0; i < m; ++i) EXPECT_LT(std::abs(f.matrix(i, (i + 2) % m) - f.matrix(0, 2)), 1e-12);
}

TEST(GroupAveraged, EigenvaluesAreDescendingAndTraceIsNormSquared) {
    const cvec x = sample(8, 2);
    const CovEstimate f = group_averaged(x, build_group(GroupKind::Dihedral, 8));
    for (int k = 1; k < 8; ++k) EXPECT_GE(f.eigenvalues[k - 1], f.eigenvalues[k]);
    EXPECT_NEAR(f.trace(), x.squaredNorm(), 1e-10);
}

TEST(GroupAveraged, ZeroObservationRejected) {
    EXPECT_THROW(group_averaged(cvec::Zero(4), build_group(GroupKind::Cyclic, 4)), DomainError);
    cvec bad = cvec::Ones(3);
    bad[1] = cplx(std::nan(""), 0.0);
    EXPECT_THROW(validate_observation(bad), DomainError);
    EXPECT_THROW(group_averaged(cvec::Ones(3), build_group(GroupKind::Cyclic, 4)), DimensionError);
}

TEST(Cayley, EntriesFollowGroupElements) {
    const cvec x = sample(4, 3);
    const GroupRep g = build_group(GroupKind::Dihedral, 4);
    const cmat c = cayley_matrix(x, g);
    ASSERT_EQ(c.cols(), static_cast<Eigen::Index>(g.order()));
    for (std::size_t j = 0; j < g.order(); ++j)
        for (int i = 0; i < 4; ++i) EXPECT_EQ(c(i, j), x[g.perms[j].map[i]]);
}

TEST(Pase, FullDepthEqualsGroupAverage) {
    const cvec x = sample(6, 4);
    const GroupRep z = build_group(GroupKind::Cyclic, 6);
    const CovEstimate a = pase(x, z, 6, {});
    const CovEstimate b = group_averaged(x, z);
    EXPECT_LT((a.matrix - b.matrix).norm(), 1e-12);
}

TEST(Pase, SurplusTermsComeFromOrdering) {
    const cvec x = sample(5, 5);
    const GroupRep z = build_group(GroupKind::Cyclic, 5);
    const OrderingStrategy s{OrderingVariant::Random, 42, std::nullopt};
    const CovEstimate p = pase(x, z, 8, s);
    std::vector<Permutation> terms = z.perms;
    for (const auto& q : ordering_sequence(s, 5, 3)) terms.push_back(q);
    EXPECT_LT((p.matrix - average_outer(x, terms)).norm(), 1e-12);
}

TEST(EigSnr, KnownSpectrum) {
    rvec d(4);
    d << 10.0, 1.0, 1.0, 1.0;
    const CovEstimate c(cmat(d.cast<cplx>().asDiagonal()));
    EXPECT_NEAR(eig_snr(c, 1).db, 10.0, 1e-12);
    EXPECT_FALSE(eig_snr(c, 1).degenerate);
    rvec r(3);
    r << 1.0, 0.0, 0.0;
    EXPECT_TRUE(eig_snr(CovEstimate(cmat(r.cast<cplx>().asDiagonal())), 1).degenerate);
}

TEST(SmExpectation, MatchesExhaustiveSymmetricAverage) {
    const cvec x = sample(5, 6);
    const CovEstimate brute = group_averaged(x, build_group(GroupKind::Symmetric, 5));
    EXPECT_LT((sm_expectation(x).matrix - brute.matrix).norm(), 1e-12);
}

TEST(EffectiveOrder, MomentIsOneOuterProductIsM) {
    const cvec x = sample(7, 7);
    const GroupRep z = build_group(GroupKind::Cyclic, 7);
    EXPECT_EQ(effective_group_order({StatisticKind::Moment, 2}, z, x), 1);
    EXPECT_EQ(effective_group_order({StatisticKind::OuterProduct, 1}, z, x), 7);
    EXPECT_EQ(effective_group_order({StatisticKind::OuterProduct, 1}, z, cvec::Ones(7)), 1);
}
