#include <gtest/gtest.h>

#include <set>

#include "adkit/groups.hpp"
#include "adkit/signals.hpp"

using namespace adkit;

TEST(Permutation, ApplyFollowsIndexMapConvention) {
    const Permutation p({2, 0, 1});
    cvec x(3);
    x << 10.0, 20.0, 30.0;
    const cvec y = p.apply(x);
    EXPECT_EQ(y[0], cplx(30.0));
    EXPECT_EQ(y[1], cplx(10.0));
    EXPECT_EQ(y[2], cplx(20.0));
    EXPECT_TRUE((p.matrix().cast<cplx>() * x - y).norm() < 1e-15);
}

TEST(Permutation, ComposeAndInverse) {
    const Permutation a({1, 2, 0, 3}), b({3, 2, 1, 0});
    const Permutation ab = a.compose(b);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(ab.map[i], a.map[b.map[i]]);
    EXPECT_TRUE(a.compose(a.inverse()).is_identity());
    EXPECT_EQ(Permutation::from_cycles(4, {{0, 2}}).map, (std::vector<int>{2, 1, 0, 3}));
}

TEST(Permutation, RejectsNonBijection) {
    EXPECT_FALSE(is_bijection({0, 0, 1}));
    EXPECT_FALSE(is_bijection({0, 3}));
    EXPECT_THROW(Permutation({1, 1}), std::exception);
}

TEST(Groups, OrdersAndAxioms) {
    EXPECT_EQ(build_group(GroupKind::Trivial, 5).order(), 1u);
    EXPECT_EQ(build_group(GroupKind::Cyclic, 7).order(), 7u);
    EXPECT_EQ(build_group(GroupKind::Dihedral, 6).order(), 12u);
    EXPECT_EQ(build_group(GroupKind::DirectProduct, 8, {4, 2}).order(), 8u);
    EXPECT_EQ(build_group(GroupKind::Symmetric, 4).order(), 24u);
    for (const auto& g : {build_group(GroupKind::Cyclic, 6), build_group(GroupKind::Dihedral, 5),
                          build_group(GroupKind::DirectProduct, 12, {2, 2, 3}), build_group(GroupKind::Symmetric, 4)})
        EXPECT_TRUE(check_group_axioms(g)) << g.name;
}

TEST(Groups, CyclicElementsAreAscendingShifts) {
    const GroupRep z = build_group(GroupKind::Cyclic, 5);
    EXPECT_TRUE(z.perms[0].is_identity());
    for (int k = 0; k < 5; ++k)
        for (int i = 0; i < 5; ++i) EXPECT_EQ(z.perms[k].map[i], (i + k) % 5);
}

TEST(Groups, Abelianness) {
    EXPECT_TRUE(is_abelian(build_group(GroupKind::Cyclic, 8)));
    EXPECT_TRUE(is_abelian(build_group(GroupKind::DirectProduct, 8, {2, 2, 2})));
    EXPECT_FALSE(is_abelian(build_group(GroupKind::Dihedral, 4)));
    EXPECT_FALSE(is_abelian(build_group(GroupKind::Symmetric, 3)));
}

TEST(Groups, NamesAndStringKinds) {
    EXPECT_EQ(build_group(GroupKind::Cyclic, 8).name, "Z8");
    EXPECT_EQ(build_group(GroupKind::DirectProduct, 8, {4, 2}).name, "Z4xZ2");
    EXPECT_EQ(build_group("dihedral", 8).kind, GroupKind::Dihedral);
    EXPECT_THROW(group_kind_from_string("nope"), DomainError);
}

TEST(Groups, SymmetricBoundAndFactorMismatch) {
    EXPECT_THROW(build_group(GroupKind::Symmetric, kSymmetricEnumerationBound + 1), CapacityError);
    EXPECT_THROW(build_group(GroupKind::DirectProduct, 8, {3, 2}), DimensionError);
}

TEST(Groups, ClosureOfRotationAndReflectionIsDihedral) {
    const Permutation tau({1, 2, 3, 4, 5, 0}), rho({5, 4, 3, 2, 1, 0});
    const GroupRep g = closure({tau, rho}, 6);
    EXPECT_EQ(g.order(), 12u);
    EXPECT_TRUE(check_group_axioms(g));
}

TEST(Groups, ClosureCapRaisesWithPartialSize) {
    const Permutation tau({1, 2, 3, 4, 5, 0}), swap({1, 0, 2, 3, 4, 5});
    try {
        closure({tau, swap}, 6, 100);
        FAIL() << "expected CapacityError";
    } catch (const CapacityError& e) {
        EXPECT_GE(e.reached, 100u);
    }
}

TEST(Groups, ConjugatedElementsAreUnitaryAndAct) {
    Rng rng(3, 0);
    const cmat u = haar_unitary(5, rng);
    const GroupRep c = conjugate_group(build_group(GroupKind::Cyclic, 5), u);
    EXPECT_EQ(c.order(), 5u);
    const cvec x = rng.complex_normal_vector(5, 1.0);
    for (std::size_t k = 0; k < c.order(); ++k) {
        const cmat e = c.element_matrix(k);
        EXPECT_LT((e.adjoint() * e - cmat::Identity(5, 5)).norm(), 1e-12);
        EXPECT_LT((e * x - c.act(k, x)).norm(), 1e-12);
    }
}

namespace {

std::vector<Permutation> full_period(OrderingVariant v, int m, std::size_t n) {
    return ordering_sequence({v, 7, std::nullopt}, m, n);
}

int differing_positions(const Permutation& a, const Permutation& b, int* first = nullptr) {
    int d = 0;
    for (int i = 0; i < a.size(); ++i)
        if (a.map[i] != b.map[i]) {
            if (d == 0 && first) *first = i;
            ++d;
        }
    return d;
}

}  // namespace

TEST(Orderings, StructuredVariantsCoverSmInOnePeriod) {
    for (auto v : {OrderingVariant::SJT, OrderingVariant::Lehmer, OrderingVariant::Heap}) {
        for (int m = 2; m <= 5; ++m) {
            std::size_t fact = 1;
            for (int k = 2; k <= m; ++k) fact *= k;
            const auto seq = full_period(v, m, fact);
            std::set<std::vector<int>> seen;
            for (const auto& p : seq) seen.insert(p.map);
            EXPECT_EQ(seen.size(), fact) << to_string(v) << " M=" << m;
        }
    }
}

TEST(Orderings, SjtStepsAreAdjacentTranspositions) {
    const auto seq = ordering_sequence({OrderingVariant::SJT, 0, Permutation::identity(4)}, 4, 24);
    EXPECT_TRUE(seq[0].is_identity());
    for (std::size_t i = 1; i < seq.size(); ++i) {
        int first = -1;
        ASSERT_EQ(differing_positions(seq[i - 1], seq[i], &first), 2);
        EXPECT_EQ(seq[i - 1].map[first], seq[i].map[first + 1]);
    }
}

TEST(Orderings, HeapStepsAreSingleSwaps) {
    const auto seq = full_period(OrderingVariant::Heap, 5, 120);
    for (std::size_t i = 1; i < seq.size(); ++i) EXPECT_EQ(differing_positions(seq[i - 1], seq[i]), 2);
}

TEST(Orderings, LehmerFollowsLexicographicSuccessor) {
    const auto seq = full_period(OrderingVariant::Lehmer, 4, 30);
    for (std::size_t i = 1; i < seq.size(); ++i) {
        auto expect = seq[i - 1].map;
        std::next_permutation(expect.begin(), expect.end());
        EXPECT_EQ(seq[i].map, expect);
    }
}

TEST(Orderings, RandomIsSeedDeterministic) {
    const auto a = full_period(OrderingVariant::Random, 8, 20);
    const auto b = full_period(OrderingVariant::Random, 8, 20);
    EXPECT_EQ(a, b);
    const auto c = ordering_sequence({OrderingVariant::Random, 8, std::nullopt}, 8, 20);
    EXPECT_NE(a, c);
}

TEST(Orderings, StringRoundTrip) {
    for (auto v : {OrderingVariant::Random, OrderingVariant::SJT, OrderingVariant::Lehmer, OrderingVariant::Heap})
        EXPECT_EQ(ordering_from_string(to_string(v)), v);
    EXPECT_THROW(ordering_from_string("bogus"), DomainError);
}
