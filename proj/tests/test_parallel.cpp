#include <gtest/gtest.h>

#include "adkit/experiments.hpp"
#include "adkit/graphsym.hpp"
#include "adkit/parallel.hpp"

using namespace adkit;

TEST(ParallelFor, VisitsEveryIndexOnce) {
    std::vector<int> hits(1000, 0);
    parallel_for(1000, Exec::Parallel, [&](std::ptrdiff_t i) { hits[i] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
    EXPECT_GE(worker_threads(), 1);
}

TEST(SerialVsParallel, DeltaScan) {
    const rmat r = diffusion_cov(prism_graph());
    EXPECT_EQ(delta_scan(r, Exec::Serial), delta_scan(r, Exec::Parallel));
}

TEST(SerialVsParallel, GraphEnumeration) {
    const auto a = enumerate_graphs(5, Exec::Serial);
    const auto b = enumerate_graphs(5, Exec::Parallel);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(canonical_code(a[i]), canonical_code(b[i]));
}

TEST(SerialVsParallel, OrderingStudy) {
    const auto a = ordering_study(6, 30.0, 10.0, {5, 10}, 40, 9, Exec::Serial);
    const auto b = ordering_study(6, 30.0, 10.0, {5, 10}, 40, 9, Exec::Parallel);
    EXPECT_EQ(a.mean_db, b.mean_db);
}

TEST(SerialVsParallel, ClassAccuracy) {
    EXPECT_EQ(class_accuracy(WaveformClass::Chirp, 5.0, 30, 3, {}, Exec::Serial),
              class_accuracy(WaveformClass::Chirp, 5.0, 30, 3, {}, Exec::Parallel));
}

TEST(SerialVsParallel, MimoReports) {
    MimoConfig cfg;
    cfg.m = 16;
    cfg.realizations = 4;
    cfg.correlation_draws = 50;
    const auto a = run_mimo(cfg, Exec::Serial);
    const auto b = run_mimo(cfg, Exec::Parallel);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].sum_se, b[i].sum_se);
        EXPECT_EQ(a[i].effective, b[i].effective);
    }
}

TEST(SerialVsParallel, GaatSlopes) {
    const auto a = gaat_slopes({16, 32, 64}, 2, 200, 5, Exec::Serial);
    const auto b = gaat_slopes({16, 32, 64}, 2, 200, 5, Exec::Parallel);
    EXPECT_EQ(a.slopes, b.slopes);
    EXPECT_EQ(a.variance, b.variance);
}

TEST(Determinism, SameSeedSameStudy) {
    EXPECT_EQ(pase_study(8, 30.0, 10.0, {4, 8}, 30, 17), pase_study(8, 30.0, 10.0, {4, 8}, 30, 17));
    EXPECT_NE(pase_study(8, 30.0, 10.0, {4, 8}, 30, 17), pase_study(8, 30.0, 10.0, {4, 8}, 30, 18));
}
