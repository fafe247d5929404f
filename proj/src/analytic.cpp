#include "salhi/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace salhi {

namespace {

// Shared amplitude products: u and w are the two contributions to the seed
// coefficient at the bright fringe, q is twice their product.
struct Amplitudes {
  double x, y;  // arm transmissions sqrt(1-l), sqrt(1-eta)
  double u;     // G1*G2*x
  double w;     // g1*g2*y
  double q;     // 2*G1*G2*g1*g2*x*y
  double ub;    // G2*g1*x
  double wb;    // G1*g2*y
};

Amplitudes amplitudes(const InterferometerConfig& cfg) {
  const auto& s1 = cfg.stage1;
  const auto& s2 = cfg.stage2;
  const double x = std::sqrt(1.0 - cfg.losses.l);
  const double y = std::sqrt(1.0 - cfg.losses.eta);
  Amplitudes a;
  a.x = x;
  a.y = y;
  a.u = s1.G * s2.G * x;
  a.w = s1.g * s2.g * y;
  a.q = 2.0 * a.u * a.w;
  a.ub = s2.G * s1.g * x;
  a.wb = s1.G * s2.g * y;
  return a;
}

}  // namespace

NoiseTerms noise_terms(const InterferometerConfig& cfg, double phi) {
  const Amplitudes a = amplitudes(cfg);
  const double cross = a.q * std::cos(phi);
  const double c2 = cfg.stage2.G * cfg.stage2.G * cfg.losses.l +
                    cfg.stage2.g * cfg.stage2.g * cfg.losses.eta;
  NoiseTerms nt;
  nt.a2 = std::max(0.0, a.u * a.u + a.w * a.w + cross);
  nt.b2 = std::max(0.0, a.ub * a.ub + a.wb * a.wb + cross);
  nt.c2 = c2;
  const double d1 = a.u - a.w;
  const double d2 = a.ub - a.wb;
  nt.zeta1_sq = d1 * d1;
  nt.zeta2_sq = d2 * d2;
  nt.zeta3_sq = c2;
  return nt;
}

namespace detail {

double visibility_from_products(double big_gain_product, double small_gain_product,
                                double optical_transmission,
                                double atomic_transmission) {
  const double num = 2.0 * big_gain_product * small_gain_product *
                     std::sqrt(optical_transmission * atomic_transmission);
  const double den = big_gain_product * big_gain_product * optical_transmission +
                     small_gain_product * small_gain_product * atomic_transmission;
  return num / den;
}

}  // namespace detail

Evaluated visibility_su(const InterferometerConfig& cfg) {
  const Amplitudes a = amplitudes(cfg);
  double den;
  if (cfg.seed.kind == SeedKind::Optical) {
    den = a.u * a.u + a.w * a.w;
  } else {
    den = a.ub * a.ub + a.wb * a.wb;
  }
  if (den == 0.0) {
    return {0.0, EvalFlag::UndefinedFringe};
  }
  return {a.q / den, EvalFlag::Ok};
}

Evaluated visibility_mz(const LossParams& losses) {
  const double num = 2.0 * std::sqrt((1.0 - losses.l) * (1.0 - losses.eta));
  const double den = 2.0 - losses.l - losses.eta;
  if (den == 0.0) {
    return {0.0, EvalFlag::UndefinedFringe};
  }
  return {num / den, EvalFlag::Ok};
}

Evaluated snr_su_id(const InterferometerConfig& cfg) {
  const double delta = cfg.probe.delta;
  const double photons = cfg.seed.mean_photon_number;
  if (delta == 0.0) return {0.0, EvalFlag::Ok};

  const Amplitudes a = amplitudes(cfg);
  const double s = std::sin(cfg.probe.phi);
  const double num = a.q * a.q * photons * s * s * delta * delta;
  if (num == 0.0) return {0.0, EvalFlag::Ok};

  const NoiseTerms nt = noise_terms(cfg, cfg.probe.phi);
  const double lead = (cfg.seed.kind == SeedKind::Optical) ? nt.a2 : nt.b2;
  const double den = lead * (nt.a2 + nt.b2 + nt.c2);
  if (den == 0.0) return {kInfiniteSentinel, EvalFlag::Infinite};
  return {num / den, EvalFlag::Ok};
}

Evaluated snr_su_bhd(const InterferometerConfig& cfg) {
  const double delta = cfg.probe.delta;
  const double photons = cfg.seed.mean_photon_number;
  if (delta == 0.0) return {0.0, EvalFlag::Ok};

  const auto& s1 = cfg.stage1;
  const auto& s2 = cfg.stage2;
  const double transmission = 1.0 - cfg.losses.l;
  const double gain_sq = (cfg.seed.kind == SeedKind::Optical)
                             ? s1.G * s1.G * s2.G * s2.G
                             : s2.G * s2.G * s1.g * s1.g;
  const double num = 4.0 * transmission * gain_sq * photons * delta * delta;
  if (num == 0.0) return {0.0, EvalFlag::Ok};

  const NoiseTerms nt = noise_terms(cfg, kPi);
  const double den = nt.zeta1_sq + nt.zeta2_sq + nt.zeta3_sq;
  if (den == 0.0) return {kInfiniteSentinel, EvalFlag::Infinite};
  return {num / den, EvalFlag::Ok};
}

Evaluated snr_mz(const LossParams& losses, const GainFactor& stage1,
                 const ProbeSettings& probe, double photons) {
  if (probe.delta == 0.0) return {0.0, EvalFlag::Ok};
  const double n0 = (2.0 * stage1.G * stage1.G - 1.0) * photons;
  const double s = std::sin(probe.phi);
  const double num = (1.0 - losses.l) * (1.0 - losses.eta) * n0 * s * s *
                     probe.delta * probe.delta;
  const double den = (2.0 - losses.l - losses.eta) -
                     2.0 * std::sqrt((1.0 - losses.l) * (1.0 - losses.eta)) *
                         std::cos(probe.phi);
  if (num == 0.0) return {0.0, EvalFlag::Ok};
  if (den <= 0.0) return {kInfiniteSentinel, EvalFlag::Infinite};
  return {num / den, EvalFlag::Ok};
}

double condition_residual(const InterferometerConfig& cfg, DetectionScheme scheme) {
  const Amplitudes a = amplitudes(cfg);
  if (scheme == DetectionScheme::Intensity) {
    return (cfg.seed.kind == SeedKind::Optical) ? a.u - a.w : a.ub - a.wb;
  }
  const auto& s1 = cfg.stage1;
  const auto& s2 = cfg.stage2;
  const double lhs = 2.0 * a.x * a.y * s1.G * s2.G * s1.g * s2.g;
  const double rhs = 2.0 * (1.0 - cfg.losses.eta) * s1.g * s1.g * s2.g * s2.g +
                     s2.g * s2.g + s2.G * s2.G;
  return lhs - rhs;
}

namespace {

GainSolution clamp_solution(double g2_exact, double lo, double hi) {
  if (g2_exact >= lo && g2_exact <= hi) {
    return {gain_from_G(g2_exact), true};
  }
  return {gain_from_G(std::clamp(g2_exact, lo, hi)), false};
}

GainSolution solve_homodyne(const GainFactor& s1, const LossParams& losses,
                            double lo, double hi) {
  const double x = std::sqrt(1.0 - losses.l);
  const double y = std::sqrt(1.0 - losses.eta);
  const auto residual = [&](double G2) {
    const double g2 = std::sqrt(G2 * G2 - 1.0);
    return 2.0 * x * y * s1.G * G2 * s1.g * g2 -
           (2.0 * (1.0 - losses.eta) * s1.g * s1.g * g2 * g2 + g2 * g2 + G2 * G2);
  };

  constexpr int kScan = 64;
  double prev_g = lo;
  double prev_r = residual(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double g = lo + (hi - lo) * static_cast<double>(i) / kScan;
    const double r = residual(g);
    if (prev_r == 0.0) return {gain_from_G(prev_g), true};
    if (prev_r * r < 0.0) {
      double a = prev_g, b = g, ra = prev_r;
      for (int it = 0; it < 200 && b - a > 1e-14 * hi; ++it) {
        const double m = 0.5 * (a + b);
        const double rm = residual(m);
        if (rm == 0.0) return {gain_from_G(m), true};
        if (ra * rm < 0.0) {
          b = m;
        } else {
          a = m;
          ra = rm;
        }
      }
      return {gain_from_G(0.5 * (a + b)), true};
    }
    prev_g = g;
    prev_r = r;
  }
  if (prev_r == 0.0) return {gain_from_G(hi), true};

  // No sign change: boundary with the smaller |residual|, lower bound on ties.
  const double rlo = std::abs(residual(lo));
  const double rhi = std::abs(residual(hi));
  if (rhi < rlo - 1e-12) return {gain_from_G(hi), false};
  return {gain_from_G(lo), false};
}

}  // namespace

GainSolution solve_g2(const GainFactor& stage1, const LossParams& losses,
                      DetectionScheme scheme, SeedKind seed, double g2_min,
                      double g2_max) {
  if (scheme == DetectionScheme::Homodyne) {
    return solve_homodyne(stage1, losses, g2_min, g2_max);
  }

  const double x = std::sqrt(1.0 - losses.l);
  const double y = std::sqrt(1.0 - losses.eta);
  if (seed == SeedKind::Optical) {
    // Balance requires G2/g2 = g1*y/(G1*x) > 1.
    const double num = stage1.g * y;
    const double den = stage1.G * x;
    if (num == 0.0 && den == 0.0) {
      // Fully degenerate: both sides vanish for every G2.
      return {gain_from_G(g2_min), true};
    }
    if (num <= den) {
      return {gain_from_G(g2_max), false};
    }
    if (den == 0.0) {
      return clamp_solution(1.0, g2_min, g2_max);
    }
    const double ratio_sq = (num * num) / (den * den);
    const double g2 = 1.0 / std::sqrt(ratio_sq - 1.0);
    return clamp_solution(std::sqrt(1.0 + g2 * g2), g2_min, g2_max);
  }

  // Atomic seed: balance requires g2/G2 = (g1/G1)*(x/y) < 1.
  const double num = stage1.g * x;
  const double den = stage1.G * y;
  if (den == 0.0) {
    return (num == 0.0) ? GainSolution{gain_from_G(g2_min), true}
                        : GainSolution{gain_from_G(g2_max), false};
  }
  const double tau = num / den;
  if (tau >= 1.0) {
    return {gain_from_G(g2_max), false};
  }
  return clamp_solution(1.0 / std::sqrt(1.0 - tau * tau), g2_min, g2_max);
}

}  // namespace salhi
