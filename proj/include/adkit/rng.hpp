#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "adkit/types.hpp"

namespace adkit {

/// SplitMix64 finalizer, used to decorrelate (seed, stream) pairs.
std::uint64_t splitmix64(std::uint64_t x);

/// Random stream whose state depends only on (seed, stream index).
///
/// Monte Carlo trial t always uses Rng(seed, t), so results do not depend on
/// which thread ran the trial or in what order trials finished.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    double uniform();                       // [0, 1)
    double normal();                        // N(0, 1)
    cplx complex_normal(double variance);   // CN(0, variance)
    cvec complex_normal_vector(int m, double variance);
    int uniform_int(int lo, int hi);        // inclusive bounds
    double laplace(double scale);           // zero-mean Laplacian with the given scale b
    std::vector<int> permutation(int m);    // uniform over S_m

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace adkit
