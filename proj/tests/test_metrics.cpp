#include <gtest/gtest.h>

#include "adkit/estimators.hpp"
#include "adkit/metrics.hpp"
#include "adkit/signals.hpp"

using namespace adkit;

namespace {

cmat hermitian(int m, Rng& rng) {
    cmat a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = rng.complex_normal(1.0);
    return (a + a.adjoint()) / 2.0;
}

cmat circulant(const std::vector<double>& c) {
    const int m = static_cast<int>(c.size());
    cmat q(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) q(i, j) = c[((j - i) % m + m) % m];
    return q;
}

}  // namespace

TEST(Commut, ZeroForCommutingPair) {
    Rng rng(1, 0);
    const cmat a = hermitian(5, rng);
    EXPECT_LT(commut_residual(a, cmat(a * a)), 1e-14);
    EXPECT_LT(commut_residual(a, cmat::Identity(5, 5)), 1e-15);
}

TEST(Commut, KnownTwoByTwo) {
    // [diag(1,-1), [[0,1],[1,0]]] = [[0,2],[-2,0]]: norm 2*sqrt(2), norms sqrt(2) and sqrt(2).
    cmat f(2, 2), r(2, 2);
    f << 1.0, 0.0, 0.0, -1.0;
    r << 0.0, 1.0, 1.0, 0.0;
    EXPECT_NEAR(commut_residual(f, r), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(abs_mismatch(f, r), 2.0, 1e-14);
}

TEST(Commut, AbsoluteIsResidualTimesNormAndScaleFlat) {
    for (int k = 0; k < 100; ++k) {
        Rng rng(2, k);
        const cmat f = hermitian(6, rng), r = hermitian(6, rng);
        const double d = commut_residual(f, r);
        EXPECT_NEAR(abs_mismatch(f, r), d * r.norm(), 1e-12 * abs_mismatch(f, r));
        EXPECT_NEAR(commut_residual(f, cmat(1e6 * r)), d, 1e-10);
        EXPECT_NEAR(commut_residual(f, cmat(1e-6 * r)), d, 1e-10);
    }
}

TEST(Coloring, IdentityIsZeroAndRankOneKnown) {
    EXPECT_EQ(coloring_index(cmat::Identity(4, 4)), 0.0);
    cmat q = cmat::Zero(2, 2);
    q(0, 0) = 1.0;
    EXPECT_NEAR(coloring_index(q), std::sqrt(0.5), 1e-15);
}

TEST(Coloring, UnitaryInvariant) {
    for (int k = 0; k < 20; ++k) {
        Rng rng(3, k);
        const cmat a = hermitian(6, rng);
        const cmat q = a * a.adjoint();
        const cmat u = haar_unitary(6, rng);
        EXPECT_NEAR(coloring_index(cmat(u * q * u.adjoint())), coloring_index(q), 1e-12);
    }
}

TEST(Concentration, ScaledIdentityIsOneOverM) {
    EXPECT_NEAR(spectral_concentration(CovEstimate(cmat(cmat::Identity(8, 8) / 8.0))), 1.0 / 8.0, 1e-15);
}

TEST(Transforms, DftAndDctAreUnitary) {
    const cmat f = dft_matrix(8);
    EXPECT_LT((f * f.adjoint() - cmat::Identity(8, 8)).norm(), 1e-12);
    EXPECT_LT(std::abs(f(1, 1) - std::polar(1.0 / std::sqrt(8.0), -2.0 * std::numbers::pi / 8.0)), 1e-14);
    const rmat c = dct2_matrix(7);
    EXPECT_LT((c * c.transpose() - rmat::Identity(7, 7)).norm(), 1e-12);
}

TEST(DiagResidual, ZeroForIdentityAnyGroup) {
    for (const auto& g : {build_group(GroupKind::Cyclic, 8), build_group(GroupKind::Dihedral, 8),
                          build_group(GroupKind::DirectProduct, 8, {2, 2, 2})})
        EXPECT_LT(diag_residual(g, cmat::Identity(8, 8)), 1e-14);
}

TEST(DiagResidual, CyclicDiagonalizesCirculant) {
    const cmat q = circulant({3.0, 1.0, 0.5, 0.2, 0.5, 1.0});
    EXPECT_LT(diag_residual(build_group(GroupKind::Cyclic, 6), q), 1e-12);
}

TEST(DiagResidual, ProductGroupDiagonalizesKroneckerCirculant) {
    const cmat a = circulant({2.0, 0.7, 0.7});
    const cmat b = circulant({1.0, 0.3});
    Eigen::MatrixXcd k(6, 6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    EXPECT_LT(diag_residual(build_group(GroupKind::DirectProduct, 6, {3, 2}), k), 1e-12);
}

TEST(PermCommutator, MatchesCommutatorNormForDiagonalR) {
    rvec lam(5);
    lam << 5.0, 3.0, 2.5, 1.0, 0.2;
    const cmat r = lam.cast<cplx>().asDiagonal();
    const Permutation s({2, 0, 1, 4, 3});
    const cmat p = s.matrix().cast<cplx>();
    const double direct = (p * r - r * p).squaredNorm();
    EXPECT_NEAR(perm_commutator_cost(s, lam), direct, 1e-12);
}

TEST(SampleCommut, CyclicGroupAverageCommutesWithCirculantR) {
    Rng rng(4, 0);
    const cvec x = rng.complex_normal_vector(6, 1.0);
    const CovEstimate f = group_averaged(x, build_group(GroupKind::Cyclic, 6));
    EXPECT_LT(commut_residual(f, circulant({2.0, 0.4, 0.1, 0.05, 0.1, 0.4})), 1e-12);
    const MismatchReport rep = mismatch_report(build_group(GroupKind::Cyclic, 6), x, cmat::Identity(6, 6));
    EXPECT_LT(rep.delta, 1e-14);
    EXPECT_EQ(rep.alpha, 0.0);
}
