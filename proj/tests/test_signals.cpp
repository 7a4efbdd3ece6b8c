#include <gtest/gtest.h>

#include <sstream>

#include "adkit/doa.hpp"
#include "adkit/signals.hpp"

using namespace adkit;

TEST(Rng, StreamsAreDeterministicAndDistinct) {
    Rng a(5, 3), b(5, 3), c(5, 4);
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_NE(x, c.uniform());
}

TEST(Rng, ComplexNormalVariance) {
    Rng rng(9, 0);
    double s = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) s += std::norm(rng.complex_normal(2.0));
    EXPECT_NEAR(s / n, 2.0, 0.03);
}

TEST(Ula, NoiselessSnapshotIsPhasedSteeringVector) {
    Rng rng(1, 0);
    const Observation x = ula_snapshot({8, 0.5, {20.0}, 300.0}, rng);
    const cvec a = steering(20.0, 8);
    const cplx phase = x[0] / a[0];
    EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
    EXPECT_LT((x - phase * a).norm(), 1e-10);
}

TEST(Ula, RejectsEndfireAngles) {
    Rng rng(1, 0);
    EXPECT_THROW(ula_snapshot({8, 0.5, {90.0}, 10.0}, rng), DomainError);
}

TEST(Waveform, NoiselessToneHasUnitPowerAndBinPhase) {
    Rng rng(2, 0);
    WaveformSpec s;
    s.m = 16;
    s.f0 = 3.0;
    const Observation x = waveform_signal(s, rng);
    EXPECT_NEAR(x.squaredNorm() / 16.0, 1.0, 1e-12);
    for (int n = 1; n < 16; ++n) EXPECT_LT(std::abs(x[n] / x[n - 1] - std::polar(1.0, 2 * std::numbers::pi * 3.0 / 16)), 1e-12);
}

TEST(Waveform, ValidationRejectsOutOfRangeRate) {
    WaveformSpec s;
    s.cls = WaveformClass::Chirp;
    s.mu = 3.0;
    EXPECT_THROW(validate(s), DomainError);
    EXPECT_EQ(waveform_class_from_string(to_string(WaveformClass::TwoTone)), WaveformClass::TwoTone);
}

TEST(Dechirp, RemovesQuadraticPhase) {
    Rng rng(3, 0);
    WaveformSpec s;
    s.cls = WaveformClass::Chirp;
    s.m = 31;
    s.mu = 0.5;
    s.f0 = 4.0;
    const Observation x = waveform_signal(s, rng);
    const cvec y = dechirp(0.5, 31) * x;
    // After dechirping, consecutive samples differ by a constant phase step.
    const cplx step = y[1] / y[0];
    for (int n = 2; n < 31; ++n) EXPECT_LT(std::abs(y[n] / y[n - 1] - step), 1e-9);
    const cvec d = dechirp_diag(0.5, 31);
    for (int n = 0; n < 31; ++n) EXPECT_NEAR(std::abs(d[n]), 1.0, 1e-15);
}

TEST(Ar1, ToeplitzEntries) {
    const cmat q = ar1_cov(0.5, 4);
    EXPECT_DOUBLE_EQ(q(0, 3).real(), 0.125);
    EXPECT_DOUBLE_EQ(q(2, 1).real(), 0.5);
    EXPECT_DOUBLE_EQ(q(1, 1).real(), 1.0);
}

TEST(PsdSqrt, SquaresBackAndRejectsIndefinite) {
    const cmat q = ar1_cov(0.8, 5);
    const cmat s = psd_sqrt(q);
    EXPECT_LT((s * s - q).norm(), 1e-12);
    cmat bad = cmat::Identity(2, 2);
    bad(1, 1) = -1.0;
    EXPECT_THROW(psd_sqrt(bad), DomainError);
}

TEST(ColoredNoise, EmpiricalCovarianceApproachesQ) {
    const cmat q = ar1_cov(0.6, 4);
    cmat s = cmat::Zero(4, 4);
    const int n = 40000;
    for (int t = 0; t < n; ++t) {
        Rng rng(4, t);
        const cvec w = colored_noise(q, rng);
        s += w * w.adjoint();
    }
    EXPECT_LT((s / double(n) - q).norm() / q.norm(), 0.03);
}

TEST(Haar, UnitaryAndSeedDeterministic) {
    Rng a(6, 0), b(6, 0);
    const cmat u = haar_unitary(7, a);
    EXPECT_LT((u.adjoint() * u - cmat::Identity(7, 7)).norm(), 1e-12);
    EXPECT_LT((u - haar_unitary(7, b)).norm(), 1e-15);
}

TEST(GraphFilter, TapsArePolynomialInAdjacency) {
    const Graph g = cycle_graph(5);
    const rmat h = graph_filter(g, {1.0, 2.0, 0.5});
    const rmat a = g.adjacency;
    EXPECT_LT((h - (rmat::Identity(5, 5) + 2.0 * a + 0.5 * a * a)).norm(), 1e-12);
}

TEST(Graph, EdgeListRoundTrip) {
    const Graph g = prism_graph();
    std::stringstream ss;
    write_edge_list(ss, g);
    const Graph h = read_edge_list(ss);
    EXPECT_EQ(h.n, 6);
    EXPECT_EQ(h.adjacency, g.adjacency);
    std::stringstream in("# comment\n0 1\n\n1 2\n");
    const Graph p = read_edge_list(in, 4);
    EXPECT_EQ(p.n, 4);
    EXPECT_EQ(p.edge_count(), 2);
    EXPECT_FALSE(p.connected());
    std::stringstream bad("0 0\n");
    EXPECT_THROW(read_edge_list(bad), std::exception);
}

TEST(Graph, NamedGraphsHaveExpectedEdgeCounts) {
    EXPECT_EQ(cycle_graph(6).edge_count(), 6);
    EXPECT_EQ(path_graph(6).edge_count(), 5);
    EXPECT_EQ(complete_graph(4).edge_count(), 6);
    EXPECT_EQ(prism_graph().edge_count(), 9);
    EXPECT_EQ(complete_bipartite(3, 3).edge_count(), 9);
    EXPECT_EQ(c5_candidate_graph().edge_count(), 8);
}
