// Timing comparison of the serial and OpenMP execution modes on the three
// data-parallel workloads: fringe scans, optimizing sweeps, and the Fock
// oracle.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "salhi/fock.hpp"
#include "salhi/moments.hpp"
#include "salhi/optimize.hpp"
#include "salhi/parallel.hpp"
#include "salhi/verify.hpp"

namespace {

using salhi::ExecutionMode;

double time_seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void report(const std::string& name, const std::function<void()>& fn) {
  salhi::set_execution_mode(ExecutionMode::Serial);
  const double serial = time_seconds(fn);
  salhi::set_execution_mode(ExecutionMode::OpenMp);
  const double parallel = time_seconds(fn);
  std::printf("%-28s serial %8.3f s   openmp %8.3f s   speedup %5.2fx\n",
              name.c_str(), serial, parallel, serial / parallel);
}

}  // namespace

int main() {
#ifndef SALHI_HAS_OPENMP
  std::printf("built without OpenMP; both columns run the serial path\n");
#endif

  const auto configs = salhi::make_random_configs(7, 64);

  report("fringe scans (64 configs)", [&] {
    double acc = 0.0;
    for (const auto& cfg : configs) {
      acc += salhi::exact_visibility(cfg, salhi::OutputChannel::Optical).value;
    }
    if (acc < 0.0) std::printf("%f\n", acc);
  });

  report("optimizing sweep (121 pts)", [&] {
    salhi::SweepSpec spec;
    spec.base = salhi::default_config();
    spec.swept = salhi::SweptParameter::LossL;
    spec.grid = {0.05, 0.95, 121};
    spec.objective = salhi::Objective::Both;
    (void)salhi::run_sweep(spec);
  });

  const auto small = salhi::make_small_configs(8, 4);
  report("fock oracle (4 configs)", [&] {
    salhi::FockOptions opt;
    opt.n_system = 24;
    opt.n_ancilla = 14;
    for (const auto& cfg : small) {
      (void)salhi::fock_oracle(cfg, salhi::OutputChannel::Optical, opt);
    }
  });

  return 0;
}
