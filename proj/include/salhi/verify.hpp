#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "salhi/types.hpp"

namespace salhi {

struct VerifyOptions {
  int grid_size = 100;       // configs in the analytic-vs-moments batches
  int fock_grid_size = 20;   // small configs in the Fock cross-check
  std::uint64_t rng_seed = 33;
  bool mutate_cross_term = false;  // test hook: injects a wrong-sign cross term
};

/// Random configuration stream shared by the verification batches:
/// G1, G2 ~ U[1,6], l, eta ~ U[0,0.99], optical seed N=1e6,
/// probe at pi + 1e-3 with delta = 1e-3.
std::vector<InterferometerConfig> make_random_configs(std::uint64_t seed, int count);

/// Small-regime stream for the Fock cross-check: r1, r2 ~ U[0.05,0.45],
/// l, eta ~ U[0,0.5], |alpha| ~ U[0.1,0.9], phi ~ U[0,2pi).
std::vector<InterferometerConfig> make_small_configs(std::uint64_t seed, int count);

/// Runs the cross-path consistency suite (analytic <-> moment engine <-> Fock
/// oracle, balance-condition stationarity, optimum coincidence, structural
/// orderings), printing one line per check. Returns 0 iff all checks pass.
int run_verify(const VerifyOptions& options, std::ostream& out);

}  // namespace salhi
