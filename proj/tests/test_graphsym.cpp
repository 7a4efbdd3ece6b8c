#include <gtest/gtest.h>

#include <numeric>

#include "adkit/experiments.hpp"
#include "adkit/graphsym.hpp"

using namespace adkit;

TEST(Laplacian, RowSumsZeroAndDiffusionInverse) {
    const Graph g = prism_graph();
    const rmat l = laplacian(g);
    EXPECT_LT(l.rowwise().sum().norm(), 1e-15);
    const rmat r = diffusion_cov(g, 0.5);
    EXPECT_LT((r * (rmat::Identity(6, 6) + 0.5 * l) - rmat::Identity(6, 6)).norm(), 1e-12);
}

TEST(Automorphism, BruteForceGroupOrders) {
    EXPECT_EQ(brute_aut_group(cycle_graph(6)).order(), 12u);
    EXPECT_EQ(brute_aut_group(complete_graph(4)).order(), 24u);
    EXPECT_EQ(brute_aut_group(path_graph(6)).order(), 2u);
    EXPECT_EQ(brute_aut_group(prism_graph()).order(), 12u);
    EXPECT_EQ(brute_aut_group(complete_bipartite(3, 3)).order(), 72u);
    EXPECT_EQ(brute_aut_group(complete_graph(3)).order(), 6u);
    EXPECT_EQ(brute_aut_group(c5_candidate_graph()).order(), 6u);
}

TEST(Automorphism, C5CandidateAutIsS3OnThreeVertices) {
    const Graph g = c5_candidate_graph();
    for (const auto& p : c5_s3_elements()) EXPECT_TRUE(is_automorphism(g, p));
}

TEST(DeltaOracle, MatchesBruteForceOnPath) {
    const Graph g = path_graph(6);
    const rmat r = diffusion_cov(g);
    ASSERT_TRUE(has_distinct_eigenvalues(r));
    const auto d = delta_scan(r);
    ASSERT_EQ(d.size(), 720u);
    std::vector<int> p(6);
    std::iota(p.begin(), p.end(), 0);
    std::size_t i = 0;
    do {
        EXPECT_EQ(d[i++] <= 1e-10, is_automorphism(g, Permutation(p)));
    } while (std::next_permutation(p.begin(), p.end()));
}

TEST(DeltaOracle, DegenerateSpectrumIsFlagged) {
    const rmat r = diffusion_cov(cycle_graph(6));
    EXPECT_FALSE(has_distinct_eigenvalues(r));
    const DeltaAutResult res = delta_aut_test(Permutation({1, 2, 3, 4, 5, 0}), r);
    EXPECT_TRUE(res.is_automorphism);
    EXPECT_TRUE(res.degenerate_spectrum);
    EXPECT_FALSE(delta_aut_test(Permutation({1, 0, 2, 3, 4, 5}), r).is_automorphism);
}

TEST(Canonical, InvariantUnderRelabeling) {
    const Graph g = c5_candidate_graph();
    const Permutation s({3, 5, 0, 2, 1, 4});
    Graph h(6);
    for (auto [u, v] : g.edges()) h.add_edge(s.map[u], s.map[v]);
    EXPECT_EQ(canonical_code(g), canonical_code(h));
    EXPECT_NE(canonical_code(g), canonical_code(prism_graph()));
    EXPECT_EQ(graph_from_code(6, adjacency_code(g)).adjacency, g.adjacency);
}

TEST(Enumeration, NonIsomorphicCounts) {
    EXPECT_EQ(enumerate_graphs(3).size(), 4u);
    EXPECT_EQ(enumerate_graphs(4).size(), 11u);
    EXPECT_EQ(enumerate_graphs(5).size(), 34u);
}

TEST(Pipeline, SixVertexStageCounts) {
    const PipelineResult r = filter_pipeline(enumerate_graphs(6));
    std::vector<int> counts;
    for (const auto& s : r.stages) counts.push_back(s.count);
    EXPECT_EQ(counts, (std::vector<int>{156, 112, 104, 26, 26, 21, 21, 7}));
    EXPECT_EQ(r.survivors.size(), 7u);
    bool has_c5 = false;
    for (const auto& g : r.survivors) has_c5 = has_c5 || canonical_code(g) == canonical_code(c5_candidate_graph());
    EXPECT_TRUE(has_c5);
}

TEST(Circulant, DetectionAndSpectra) {
    EXPECT_TRUE(is_circulant_graph(brute_aut_group(cycle_graph(6))));
    EXPECT_TRUE(is_circulant_graph(brute_aut_group(prism_graph())));
    EXPECT_FALSE(is_circulant_graph(brute_aut_group(path_graph(6))));
    // Connection sets on 4 vertices: subsets of {1, 2}.
    EXPECT_EQ(circulant_spectra(4).size(), 4u);
}

TEST(Hungarian, MatchesBruteForceOptimum) {
    for (int t = 0; t < 20; ++t) {
        Rng rng(7, t);
        rmat a(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) a(i, j) = rng.normal();
        std::vector<int> p(5);
        std::iota(p.begin(), p.end(), 0);
        double best = -1e300;
        do {
            double s = 0.0;
            for (int i = 0; i < 5; ++i) s += a(i, p[i]);
            best = std::max(best, s);
        } while (std::next_permutation(p.begin(), p.end()));
        const Permutation h = hungarian_round(a);
        double got = 0.0;
        for (int i = 0; i < 5; ++i) got += a(i, h.map[i]);
        EXPECT_NEAR(got, best, 1e-10);
    }
}

TEST(Hungarian, TiesResolveLexicographically) {
    EXPECT_TRUE(hungarian_round(rmat::Ones(4, 4)).is_identity());
    rmat a = rmat::Zero(3, 3);
    a(0, 1) = a(1, 0) = a(2, 2) = 1.0;
    a(0, 2) = a(2, 0) = a(1, 1) = 1.0;
    // Optima: (1,0,2) and (2,1,0); the smaller map wins.
    EXPECT_EQ(hungarian_round(a).map, (std::vector<int>{1, 0, 2}));
    const std::vector<int> mc = hungarian_min_cost(-a);
    EXPECT_EQ(a(0, mc[0]) + a(1, mc[1]) + a(2, mc[2]), 3.0);
}

TEST(Gevp, AutomorphismInSpanGivesZeroEigenvalue) {
    const rmat r = diffusion_cov(path_graph(6));
    const Permutation refl({5, 4, 3, 2, 1, 0}), swap({1, 0, 2, 3, 4, 5});
    const GevpSolution s = dc_gevp(r, difference_basis({swap, refl}));
    EXPECT_LT(s.lambda_min, 1e-12);
    EXPECT_NEAR(s.a_star.norm(), 1.0, 1e-12);
    // The eigenvector sign is arbitrary, so A* is +-(P_refl - I) up to scale.
    const rmat b = refl.matrix() - rmat::Identity(6, 6);
    EXPECT_NEAR(std::abs((s.a_star.array() * b.array()).sum()) / b.norm(), 1.0, 1e-10);
}

TEST(Gevp, SingularGramRejected) {
    const Permutation t({1, 2, 0});
    EXPECT_THROW(dc_gevp(diffusion_cov(path_graph(3)), difference_basis({t, t})), DomainError);
}

TEST(SequentialGevp, PathRecoversReflection) {
    const SubgroupResult r = sequential_gevp(diffusion_cov(path_graph(6)), difference_basis(generic_generators(6)));
    EXPECT_EQ(r.elements.order(), 2u);
    EXPECT_EQ(r.accepted_steps(), 1);
    for (const auto& p : r.elements.perms) EXPECT_TRUE(is_automorphism(path_graph(6), p));
}

TEST(SequentialGevp, AcceptedSubgroupIsSoundAndBounded) {
    for (const Graph& g : {cycle_graph(6), complete_graph(4), prism_graph(), complete_graph(3)}) {
        const SubgroupResult r = sequential_gevp(diffusion_cov(g), difference_basis(generic_generators(g.n)));
        for (const auto& p : r.elements.perms) EXPECT_TRUE(is_automorphism(g, p));
        const double bound = std::ceil(std::log2(std::max<double>(2.0, r.elements.order())));
        EXPECT_LE(r.accepted_steps(), bound);
        for (const auto& s : r.trace)
            if (s.accepted) EXPECT_LE(s.delta, 1e-8);
    }
}

TEST(SequentialGevp, CycleExampleTraceStartsWithTheSixCycle) {
    const SubgroupResult r =
        sequential_gevp(diffusion_cov(cycle_graph(6)), difference_basis(cycle_example_generators(6)));
    ASSERT_FALSE(r.trace.empty());
    EXPECT_TRUE(r.trace[0].accepted);
    EXPECT_EQ(r.trace[0].group_order, 6u);
    EXPECT_EQ(r.trace[0].candidate->map, (std::vector<int>{1, 2, 3, 4, 5, 0}));
}

TEST(Generators, GenericFamilyDeduplicatesForSmallN) {
    EXPECT_EQ(generic_generators(6).size(), 5u);
    EXPECT_EQ(generic_generators(3).size(), 3u);
    EXPECT_THROW(generic_generators(2), DomainError);
}
