#include "salhi/parallel.hpp"

#include <atomic>

namespace salhi {

namespace {

std::atomic<ExecutionMode> g_mode{
#ifdef SALHI_HAS_OPENMP
    ExecutionMode::OpenMp
#else
    ExecutionMode::Serial
#endif
};

}  // namespace

ExecutionMode execution_mode() { return g_mode.load(std::memory_order_relaxed); }

void set_execution_mode(ExecutionMode mode) {
  g_mode.store(mode, std::memory_order_relaxed);
}

void set_thread_count(int threads) {
#ifdef SALHI_HAS_OPENMP
  if (threads > 0) {
    omp_set_num_threads(threads);
  }
#else
  (void)threads;
#endif
}

}  // namespace salhi
