#include "adkit/rng.hpp"

#include <omp.h>

#include <cmath>
#include <numeric>

#include "adkit/parallel.hpp"

namespace adkit {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : eng_(splitmix64(splitmix64(seed) ^ (stream * 0xd1342543de82ef95ULL + 1))) {}

double Rng::uniform() { return unif_(eng_); }

double Rng::normal() { return normal_(eng_); }

cplx Rng::complex_normal(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
}

cvec Rng::complex_normal_vector(int m, double variance) {
    cvec v(m);
    for (int i = 0; i < m; ++i) v[i] = complex_normal(variance);
    return v;
}

int Rng::uniform_int(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(eng_);
}

double Rng::laplace(double scale) {
    const double u = uniform() - 0.5;
    return -scale * (u < 0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::abs(u));
}

std::vector<int> Rng::permutation(int m) {
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    for (int i = m - 1; i > 0; --i) {
        const int j = uniform_int(0, i);
        std::swap(p[i], p[j]);
    }
    return p;
}

int worker_threads() { return omp_get_max_threads(); }

}  // namespace adkit
