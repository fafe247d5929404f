#pragma once

#include "salhi/types.hpp"

namespace salhi {

// Noise quadrances of the optical output. a2/b2/c2 are the intensity-detection
// terms evaluated at the probe phase (a2 and b2 carry the cos(phi) cross term);
// the zeta fields are the homodyne quadrature variances at the dark fringe.
struct NoiseTerms {
  double a2 = 0.0;
  double b2 = 0.0;
  double c2 = 0.0;
  double zeta1_sq = 0.0;
  double zeta2_sq = 0.0;
  double zeta3_sq = 0.0;
};

NoiseTerms noise_terms(const InterferometerConfig& cfg, double phi);

/// Fringe visibility of the optical output (large-seed closed form). Both
/// seed kinds share the numerator 2*G1*G2*g1*g2*sqrt((1-l)(1-eta)); the
/// denominator is the seed-amplified quadrance. Flagged UndefinedFringe when
/// the denominator vanishes.
Evaluated visibility_su(const InterferometerConfig& cfg);

/// Mach-Zehnder comparison visibility 2*sqrt((1-l)(1-eta))/(2-l-eta);
/// equals 1 iff l == eta.
Evaluated visibility_mz(const LossParams& losses);

/// Intensity-detection SNR at the configured probe phase (closed form).
Evaluated snr_su_id(const InterferometerConfig& cfg);

/// Balanced-homodyne SNR at the dark fringe. No phase argument: the homodyne
/// figure is defined only at the dark point.
Evaluated snr_su_bhd(const InterferometerConfig& cfg);

/// Mach-Zehnder SNR with phase-sensitive particle number N0 = (2*G1^2-1)*N.
Evaluated snr_mz(const LossParams& losses, const GainFactor& stage1,
                 const ProbeSettings& probe, double photons);

/// Signed LHS-RHS residual of the gain-loss balance condition for the given
/// detection scheme and the config's seed kind; zero means balanced.
double condition_residual(const InterferometerConfig& cfg, DetectionScheme scheme);

struct GainSolution {
  GainFactor stage2;
  bool exact = false;  // true iff the returned gain satisfies the condition
};

/// Solves the balance condition for the recombination gain G2 within
/// [g2_min, g2_max]. Intensity detection has a closed form (per seed kind);
/// homodyne is solved by bracketed bisection on the residual. When no
/// solution exists in bounds, returns the boundary closest to balance with
/// exact=false; never throws for unsatisfiable conditions.
GainSolution solve_g2(const GainFactor& stage1, const LossParams& losses,
                      DetectionScheme scheme, SeedKind seed,
                      double g2_min = 1.0, double g2_max = 10.0);

namespace detail {

/// Optical-seed visibility as a function of the gain products and arm
/// transmissions; invariant under swapping the two products together with
/// the two transmissions.
double visibility_from_products(double big_gain_product, double small_gain_product,
                                double optical_transmission, double atomic_transmission);

}  // namespace detail

}  // namespace salhi
