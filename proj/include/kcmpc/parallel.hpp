#pragma once

#include <cstddef>

#ifdef KCMPC_HAVE_OPENMP
#include <omp.h>
#endif

namespace kcmpc {

// Global switch between the OpenMP kernels and the serial reference path.
// All parallel loops write to disjoint preallocated slots, so both paths
// produce bit-identical results; tests and the benchmark rely on that.
bool parallel_enabled();
void set_parallel(bool on);

// Runs body(i) for i in [0, n). Parallel when OpenMP is available and the
// global switch is on, serial otherwise.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
#ifdef KCMPC_HAVE_OPENMP
    if (parallel_enabled()) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

} // namespace kcmpc
