#ifndef QBT_PARALLEL_HPP
#define QBT_PARALLEL_HPP

#include <cstddef>

namespace qbt {

/// Execution policy for the data-parallel kernels.  Every parallel kernel has
/// a serial twin that performs the same floating-point operations in the same
/// per-item order, so results are reproducible across thread counts.
enum class Exec { serial, parallel };

template <typename Fn>
void parallel_for(Exec exec, std::ptrdiff_t n, Fn&& fn) {
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
    }
}

} // namespace qbt

#endif
