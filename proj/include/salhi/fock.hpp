#pragma once

#include <stdexcept>

#include "salhi/moments.hpp"
#include "salhi/types.hpp"

namespace salhi {

struct FockOptions {
  int n_system = 24;    // Fock cutoff of the optical and atomic modes
  int n_ancilla = 0;    // cutoff of the two vacuum ancillas; 0 means n_system
  double lo_phase = 0.0;
  double tail_tolerance = 1e-10;
};

struct FockReport {
  MomentReport moments;
  double tail_norm = 0.0;  // truncation estimate: top-level occupancy + norm defect
};

class CutoffError : public std::runtime_error {
 public:
  CutoffError(const std::string& what, int suggested)
      : std::runtime_error(what), suggested_cutoff(suggested) {}
  int suggested_cutoff;
};

/// Independent verification path: evolves a truncated Fock-basis state vector
/// of the four modes (seed, partner, loss ancilla, dephasing ancilla) through
/// the two squeezing stages, the phase shift and the two beam-splitter loss
/// couplings, then takes the four moments by direct expectation. Valid in the
/// small regime r <= 0.5, |alpha| <= 1 (throws std::domain_error outside it);
/// throws CutoffError naming a sufficient cutoff when the truncated tail
/// exceeds tail_tolerance.
FockReport fock_oracle(const InterferometerConfig& cfg, OutputChannel channel,
                       const FockOptions& options = {});

}  // namespace salhi
