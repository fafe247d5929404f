#pragma once

#include <vector>

#include "salhi/analytic.hpp"
#include "salhi/types.hpp"

namespace salhi {

enum class SweptParameter { LossL, LossEta, GainG2, Phi };

enum class Objective { None, Visibility, Snr, Both };

struct SweepGrid {
  double min = 0.0;
  double max = 1.0;
  int points = 2;  // >= 2
};

struct SweepSpec {
  SweptParameter swept = SweptParameter::LossL;
  SweepGrid grid;
  InterferometerConfig base;
  DetectionScheme scheme = DetectionScheme::Intensity;
  Objective objective = Objective::None;
  double g2_min = 1.0;
  double g2_max = 10.0;
};

// One grid point. When an objective is active the corresponding value column
// (visibility_su / snr_su) holds the optimized value; otherwise the value at
// the base gains. Flags are serialized as 0/1 in CSV.
struct SweepRow {
  double swept_value = 0.0;
  double visibility_su = 0.0;
  double visibility_mz = 0.0;
  double snr_su = 0.0;
  double snr_mz = 0.0;
  double optimal_g2_for_v = 0.0;
  double optimal_g2_for_snr = 0.0;
  double condition_residual = 0.0;
  bool exact = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ascending in swept_value, one per grid point
};

struct OptimizeOutcome {
  GainFactor stage2;
  double value = 0.0;
  bool exact = false;  // the balance condition is met exactly at stage2
  bool flat = false;   // objective variation below 1e-14 across the bounds
};

/// Maximizes the chosen objective over G2 in [g2_min, g2_max] with everything
/// else held at the base config. Visibility uses the closed-form solve when it
/// lands inside the bounds; otherwise (and for SNR) a 64-point prescan plus
/// golden section with tolerance 1e-6, always including the base G2 and both
/// bounds as candidates. Deterministic for fixed inputs.
OptimizeOutcome optimize_g2(const InterferometerConfig& base, Objective objective,
                            DetectionScheme scheme, double g2_min = 1.0,
                            double g2_max = 10.0);

struct CoincidenceRow {
  double loss = 0.0;
  double g2_for_visibility = 0.0;
  double g2_for_snr = 0.0;
  double difference = 0.0;
  bool flat = false;
};

/// For each loss value, maximizes visibility and SNR over G2 under the given
/// scheme and tabulates both maximizers.
std::vector<CoincidenceRow> coincidence_report(const InterferometerConfig& base,
                                               const SweepGrid& loss_grid,
                                               DetectionScheme scheme,
                                               double g2_min = 1.0,
                                               double g2_max = 10.0);

/// Loss value at which the fixed gains happen to satisfy the intensity
/// balance condition: l_B = 1 - (g1 g2 / (G1 G2))^2 (1 - eta). The
/// pre-optimization SNR peak sits there.
double condition_loss(const GainFactor& stage1, const GainFactor& stage2,
                      double eta);

/// Evaluates every row of the sweep (rows are independent and may run in
/// parallel; assembly is in grid order, so output is deterministic).
/// Per-row evaluation problems are recorded in-row via the flag sentinels;
/// the sweep itself never aborts.
SweepResult run_sweep(const SweepSpec& spec);

}  // namespace salhi
