#include "salhi/moments.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "salhi/golden.hpp"
#include "salhi/parallel.hpp"

namespace salhi {

using cd = std::complex<double>;

double ModeCoefficients::commutator() const {
  double acc = 0.0;
  for (int k = 0; k < 4; ++k) {
    acc += std::norm(c[k]) - std::norm(d[k]);
  }
  return acc;
}

ModeCoefficients build_output_coefficients(const InterferometerConfig& cfg,
                                           double phi, OutputChannel channel) {
  const auto& s1 = cfg.stage1;
  const auto& s2 = cfg.stage2;
  const double x = std::sqrt(1.0 - cfg.losses.l);
  const double y = std::sqrt(1.0 - cfg.losses.eta);
  const double rl = std::sqrt(cfg.losses.l);
  const double re = std::sqrt(cfg.losses.eta);
  const cd phase = std::polar(1.0, phi);

  ModeCoefficients mc;
  const auto seed = static_cast<int>(InputMode::Seed);
  const auto partner = static_cast<int>(InputMode::Partner);
  const auto loss_vac = static_cast<int>(InputMode::LossVacuum);
  const auto deph_vac = static_cast<int>(InputMode::DephasingVacuum);

  if (channel == OutputChannel::Optical) {
    mc.c[seed] = s1.G * s2.G * x * phase + s1.g * s2.g * y;
    mc.d[partner] = s2.G * s1.g * x * phase + s1.G * s2.g * y;
    mc.c[loss_vac] = s2.G * rl;
    mc.d[deph_vac] = s2.g * re;
  } else {
    const cd conj_phase = std::conj(phase);
    mc.d[seed] = s1.G * s2.g * x * conj_phase + s2.G * s1.g * y;
    mc.c[partner] = s1.g * s2.g * x * conj_phase + s1.G * s2.G * y;
    mc.d[loss_vac] = s2.g * rl;
    mc.c[deph_vac] = s2.G * re;
  }
  return mc;
}

std::complex<double> mean_field(const ModeCoefficients& mc, const SeedSpec& seed) {
  const int j = (seed.kind == SeedKind::Optical)
                    ? static_cast<int>(InputMode::Seed)
                    : static_cast<int>(InputMode::Partner);
  const cd alpha = std::polar(std::sqrt(seed.mean_photon_number), seed.alpha_phase);
  return mc.c[j] * alpha + mc.d[j] * std::conj(alpha);
}

MomentReport compute_moments(const ModeCoefficients& mc, const SeedSpec& seed,
                             double lo_phase) {
  const cd mu = mean_field(mc, seed);

  double n_f = 0.0;
  cd m_f = 0.0;
  for (int k = 0; k < 4; ++k) {
    n_f += std::norm(mc.d[k]);
    m_f += mc.c[k] * mc.d[k];
  }

  const double mu_sq = std::norm(mu);
  MomentReport report;
  report.mean_intensity = mu_sq + n_f;
  report.intensity_variance = mu_sq * (2.0 * n_f + 1.0) +
                              2.0 * std::real(std::conj(mu) * std::conj(mu) * m_f) +
                              n_f * (n_f + 1.0) + std::norm(m_f);

  const cd lo = std::polar(1.0, lo_phase);
  report.quadrature_mean = 2.0 * std::real(mu * std::conj(lo));
  double qv = 0.0;
  for (int k = 0; k < 4; ++k) {
    qv += std::norm(mc.c[k] * std::conj(lo) + std::conj(mc.d[k]) * lo);
  }
  report.quadrature_variance = qv;
  return report;
}

namespace {

double mean_intensity_at(const InterferometerConfig& cfg, OutputChannel channel,
                         double phi) {
  return compute_moments(build_output_coefficients(cfg, phi, channel), cfg.seed, 0.0)
      .mean_intensity;
}

}  // namespace

Evaluated exact_visibility(const InterferometerConfig& cfg, OutputChannel channel) {
  constexpr int kScanPoints = 720;
  std::vector<double> intensity(kScanPoints);
  parallel_for(kScanPoints, [&](std::int64_t i) {
    const double phi = 2.0 * kPi * static_cast<double>(i) / kScanPoints;
    intensity[static_cast<std::size_t>(i)] = mean_intensity_at(cfg, channel, phi);
  });

  int imax = 0, imin = 0;
  for (int i = 1; i < kScanPoints; ++i) {
    if (intensity[i] > intensity[imax]) imax = i;
    if (intensity[i] < intensity[imin]) imin = i;
  }

  const double step = 2.0 * kPi / kScanPoints;
  const auto refine = [&](int idx, bool maximize) {
    const double a = (idx - 1) * step;
    const double b = (idx + 1) * step;
    const auto f = [&](double phi) { return mean_intensity_at(cfg, channel, phi); };
    const double phi_star =
        maximize ? golden_max(f, a, b, 1e-10) : golden_min(f, a, b, 1e-10);
    return f(phi_star);
  };

  const double i_max = refine(imax, true);
  const double i_min = refine(imin, false);
  const double total = i_max + i_min;
  if (total == 0.0) {
    return {0.0, EvalFlag::UndefinedFringe};
  }
  return {(i_max - i_min) / total, EvalFlag::Ok};
}

namespace {

// Richardson-extrapolated central difference, fourth-order accurate.
template <typename Fn>
auto central_difference(Fn&& fn, double at, double h) {
  const auto d1 = (fn(at + h) - fn(at - h)) / (2.0 * h);
  const auto d2 = (fn(at + 0.5 * h) - fn(at - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

constexpr double kFdStep = 1e-5;
constexpr double kVarianceFloor = 1e-300;

}  // namespace

Evaluated snr_numeric(const InterferometerConfig& cfg, DetectionScheme scheme,
                      OutputChannel channel) {
  const double delta = cfg.probe.delta;
  if (delta == 0.0) return {0.0, EvalFlag::Ok};

  if (scheme == DetectionScheme::Intensity) {
    const double phi = cfg.probe.phi;
    const double slope = central_difference(
        [&](double p) { return mean_intensity_at(cfg, channel, p); }, phi, kFdStep);
    const double variance =
        compute_moments(build_output_coefficients(cfg, phi, channel), cfg.seed, 0.0)
            .intensity_variance;
    if (variance < kVarianceFloor) return {kInfiniteSentinel, EvalFlag::Infinite};
    return {slope * slope * delta * delta / variance, EvalFlag::Ok};
  }

  // Homodyne at the dark fringe: quadrature picked along the phase response.
  const double phi_dark = kPi;
  const cd slope = central_difference(
      [&](double p) {
        return mean_field(build_output_coefficients(cfg, p, channel), cfg.seed);
      },
      phi_dark, kFdStep);
  const double lo_phase = (std::abs(slope) == 0.0) ? 0.0 : std::arg(slope);
  const double variance =
      compute_moments(build_output_coefficients(cfg, phi_dark, channel), cfg.seed,
                      lo_phase)
          .quadrature_variance;
  if (variance < kVarianceFloor) return {kInfiniteSentinel, EvalFlag::Infinite};
  const double signal = 2.0 * std::abs(slope) * delta;
  return {signal * signal / variance, EvalFlag::Ok};
}

}  // namespace salhi
