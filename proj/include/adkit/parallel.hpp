#pragma once

#include <cstddef>

#include "adkit/types.hpp"

namespace adkit {

/// Runs body(i) for i in [0, n). The parallel path uses an OpenMP worker pool;
/// the serial path is the reference used by tests. Bodies must write only to
/// slot i of caller-owned storage so both paths give identical results.
template <class Body>
void parallel_for(std::ptrdiff_t n, Exec exec, Body&& body) {
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    }
}

/// Number of worker threads the parallel path would use.
int worker_threads();

}  // namespace adkit
