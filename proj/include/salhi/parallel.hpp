#pragma once

#include <cstdint>

#ifdef SALHI_HAS_OPENMP
#include <omp.h>
#endif

namespace salhi {

enum class ExecutionMode { Serial, OpenMp };

/// Process-wide execution mode for the data-parallel kernels (grid sweeps,
/// fringe scans, verification batches, Fock matvecs). Defaults to OpenMp when
/// compiled with OpenMP, Serial otherwise. Every kernel computes each element
/// independently and stores it to its own slot, so both modes produce
/// bit-identical results.
ExecutionMode execution_mode();
void set_execution_mode(ExecutionMode mode);

/// Caps the OpenMP thread count (0 = runtime default).
void set_thread_count(int threads);

template <typename Fn>
void parallel_for(std::int64_t count, Fn&& fn) {
#ifdef SALHI_HAS_OPENMP
  if (execution_mode() == ExecutionMode::OpenMp) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
#endif
  for (std::int64_t i = 0; i < count; ++i) {
    fn(i);
  }
}

}  // namespace salhi
