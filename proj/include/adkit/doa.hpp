#pragma once

#include <utility>
#include <vector>

#include "adkit/groups.hpp"
#include "adkit/types.hpp"

namespace adkit {

/// ULA steering vector with entries exp(j 2 pi spacing m sin(theta)).
cvec steering(double theta_deg, int m, double spacing = 0.5);

struct AngleGrid {
    double start = -90.0;
    double stop = 90.0;
    double step = 0.1;
    std::vector<double> points() const;
};

struct Peak {
    double angle = 0.0;
    double value = 0.0;
};

struct Pseudospectrum {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<Peak> peaks;  // descending by value
};

/// MUSIC pseudospectrum from a Hermitian estimate and its noise subspace.
/// Peaks are local maxima separated by at least min_sep degrees, refined by parabolic interpolation.
Pseudospectrum music_from_estimate(const CovEstimate& est, int k, const AngleGrid& grid, double spacing = 0.5,
                                   double min_sep = 1.0, Exec exec = Exec::Parallel);

/// Single-snapshot MUSIC on the group-averaged estimate F_G(x).
Pseudospectrum cg_music(const Observation& x, const GroupRep& g, int k, const AngleGrid& grid = {},
                        double spacing = 0.5, Exec exec = Exec::Parallel);

/// Baseline MUSIC on the rank-one estimate x x^H.
Pseudospectrum covariance_music(const Observation& x, int k, const AngleGrid& grid = {}, double spacing = 0.5,
                                Exec exec = Exec::Parallel);

/// Peaks whose value is at least rel_floor times the global maximum.
std::vector<Peak> significant_peaks(const Pseudospectrum& p, double rel_floor);

}  // namespace adkit
