#include "salhi/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "salhi/golden.hpp"
#include "salhi/parallel.hpp"

namespace salhi {

double condition_loss(const GainFactor& stage1, const GainFactor& stage2,
                      double eta) {
  const double ratio = (stage1.g * stage2.g) / (stage1.G * stage2.G);
  return 1.0 - ratio * ratio * (1.0 - eta);
}

namespace {

double objective_value(const InterferometerConfig& cfg, Objective objective,
                       DetectionScheme scheme) {
  if (objective == Objective::Visibility) {
    return visibility_su(cfg).value;
  }
  const Evaluated snr = (scheme == DetectionScheme::Intensity) ? snr_su_id(cfg)
                                                               : snr_su_bhd(cfg);
  return snr.value;  // the Infinite sentinel already dominates any maximum
}

OptimizeOutcome maximize_scalar(const InterferometerConfig& base,
                                Objective objective, DetectionScheme scheme,
                                double lo, double hi) {
  const auto eval = [&](double g2) {
    InterferometerConfig cfg = base;
    cfg.stage2 = gain_from_G(g2);
    return objective_value(cfg, objective, scheme);
  };

  // Prescan to pick the bracket; the SNR objective can be bimodal near the
  // bounds, and its peak can be narrower than the scan step.
  constexpr int kScan = 64;
  std::vector<double> grid(kScan + 1);
  std::vector<double> values(kScan + 1);
  for (int i = 0; i <= kScan; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / kScan;
    values[static_cast<std::size_t>(i)] = eval(grid[static_cast<std::size_t>(i)]);
  }

  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  if (*max_it - *min_it < 1e-14 * std::max(1.0, std::abs(*max_it))) {
    return {gain_from_G(lo), eval(lo), false, true};
  }

  int best = static_cast<int>(max_it - values.begin());
  const double a = grid[static_cast<std::size_t>(std::max(best - 1, 0))];
  const double b = grid[static_cast<std::size_t>(std::min(best + 1, kScan))];
  const double refined = golden_max(eval, a, b, 1e-6);

  double best_g2 = refined;
  double best_value = eval(refined);
  const auto consider = [&](double g2) {
    if (g2 < lo || g2 > hi) return;
    const double v = eval(g2);
    if (v > best_value || (v == best_value && g2 < best_g2)) {
      best_value = v;
      best_g2 = g2;
    }
  };
  consider(lo);
  consider(hi);
  consider(base.stage2.G);

  return {gain_from_G(best_g2), best_value, false, false};
}

}  // namespace

OptimizeOutcome optimize_g2(const InterferometerConfig& base, Objective objective,
                            DetectionScheme scheme, double g2_min, double g2_max) {
  if (!(g2_min >= 1.0 && g2_min < g2_max)) {
    throw std::invalid_argument("optimize_g2: bounds must satisfy 1 <= min < max");
  }
  if (objective == Objective::None || objective == Objective::Both) {
    throw std::invalid_argument("optimize_g2: objective must be Visibility or Snr");
  }

  if (objective == Objective::Visibility) {
    const GainSolution sol = solve_g2(base.stage1, base.losses,
                                      DetectionScheme::Intensity, base.seed.kind,
                                      g2_min, g2_max);
    if (sol.exact) {
      InterferometerConfig cfg = base;
      cfg.stage2 = sol.stage2;
      return {sol.stage2, visibility_su(cfg).value, true, false};
    }
  }
  return maximize_scalar(base, objective, scheme, g2_min, g2_max);
}

std::vector<CoincidenceRow> coincidence_report(const InterferometerConfig& base,
                                               const SweepGrid& loss_grid,
                                               DetectionScheme scheme,
                                               double g2_min, double g2_max) {
  if (loss_grid.points < 1) {
    throw std::invalid_argument("coincidence_report: grid needs >= 1 point");
  }
  std::vector<CoincidenceRow> rows(static_cast<std::size_t>(loss_grid.points));
  parallel_for(loss_grid.points, [&](std::int64_t i) {
    const double l =
        (loss_grid.points == 1)
            ? loss_grid.min
            : loss_grid.min + (loss_grid.max - loss_grid.min) * static_cast<double>(i) /
                                  (loss_grid.points - 1);
    InterferometerConfig cfg = base;
    cfg.losses.l = l;
    const OptimizeOutcome for_v =
        optimize_g2(cfg, Objective::Visibility, scheme, g2_min, g2_max);
    const OptimizeOutcome for_snr =
        optimize_g2(cfg, Objective::Snr, scheme, g2_min, g2_max);
    CoincidenceRow row;
    row.loss = l;
    row.g2_for_visibility = for_v.stage2.G;
    row.g2_for_snr = for_snr.stage2.G;
    row.difference = std::abs(row.g2_for_visibility - row.g2_for_snr);
    row.flat = for_v.flat || for_snr.flat;
    rows[static_cast<std::size_t>(i)] = row;
  });
  return rows;
}

SweepResult run_sweep(const SweepSpec& spec) {
  const auto& grid = spec.grid;
  if (grid.points < 2 || !(grid.min < grid.max)) {
    throw std::invalid_argument("run_sweep: grid needs min < max and points >= 2");
  }
  if ((spec.swept == SweptParameter::LossL || spec.swept == SweptParameter::LossEta) &&
      (grid.min < 0.0 || grid.max > 1.0)) {
    throw std::invalid_argument("run_sweep: loss grid must lie in [0,1]");
  }
  if (spec.swept == SweptParameter::GainG2 && grid.min < 1.0) {
    throw std::invalid_argument("run_sweep: G2 grid must lie in [1,inf)");
  }

  const bool optimize_v =
      spec.objective == Objective::Visibility || spec.objective == Objective::Both;
  const bool optimize_snr =
      spec.objective == Objective::Snr || spec.objective == Objective::Both;

  SweepResult result;
  result.rows.resize(static_cast<std::size_t>(grid.points));
  parallel_for(grid.points, [&](std::int64_t i) {
    const double value =
        grid.min + (grid.max - grid.min) * static_cast<double>(i) / (grid.points - 1);
    InterferometerConfig cfg = spec.base;
    switch (spec.swept) {
      case SweptParameter::LossL:
        cfg.losses.l = value;
        break;
      case SweptParameter::LossEta:
        cfg.losses.eta = value;
        break;
      case SweptParameter::GainG2:
        cfg.stage2 = gain_from_G(value);
        break;
      case SweptParameter::Phi:
        cfg.probe.phi = value;
        break;
    }

    SweepRow row;
    row.swept_value = value;
    row.visibility_mz = visibility_mz(cfg.losses).value;
    row.snr_mz =
        snr_mz(cfg.losses, cfg.stage1, cfg.probe, cfg.seed.mean_photon_number).value;
    row.condition_residual = condition_residual(cfg, spec.scheme);
    row.optimal_g2_for_v = cfg.stage2.G;
    row.optimal_g2_for_snr = cfg.stage2.G;

    if (optimize_v) {
      const OptimizeOutcome o =
          optimize_g2(cfg, Objective::Visibility, spec.scheme, spec.g2_min,
                      spec.g2_max);
      row.optimal_g2_for_v = o.stage2.G;
      row.visibility_su = o.value;
      row.exact = o.exact;
    } else {
      row.visibility_su = visibility_su(cfg).value;
    }

    if (optimize_snr) {
      const OptimizeOutcome o =
          optimize_g2(cfg, Objective::Snr, spec.scheme, spec.g2_min, spec.g2_max);
      row.optimal_g2_for_snr = o.stage2.G;
      row.snr_su = o.value;
    } else {
      row.snr_su = (spec.scheme == DetectionScheme::Intensity ? snr_su_id(cfg)
                                                              : snr_su_bhd(cfg))
                       .value;
    }

    result.rows[static_cast<std::size_t>(i)] = row;
  });
  return result;
}

}  // namespace salhi
