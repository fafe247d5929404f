#pragma once

#include <array>
#include <complex>

#include "salhi/types.hpp"

namespace salhi {

enum class OutputChannel { Optical, Atomic };

// Input-mode order used by ModeCoefficients.
enum class InputMode : int {
  Seed = 0,            // optical seed a_s0
  Partner = 1,         // atomic spin wave S_a0
  LossVacuum = 2,      // vacuum entering through the optical loss
  DephasingVacuum = 3  // vacuum entering through the atomic dephasing
};

// An output mode written as sum_k (c_k a_k + d_k a_k^dagger) over the four
// input modes. A bona fide bosonic mode satisfies
// sum|c|^2 - sum|d|^2 = 1 (commutator preservation).
struct ModeCoefficients {
  std::array<std::complex<double>, 4> c{};  // annihilation coefficients
  std::array<std::complex<double>, 4> d{};  // creation coefficients

  double commutator() const;  // sum|c|^2 - sum|d|^2
};

/// Exact Bogoliubov coefficients of the chosen interference output after both
/// stages, the loss and the dephasing, at interferometer phase phi.
ModeCoefficients build_output_coefficients(const InterferometerConfig& cfg,
                                           double phi, OutputChannel channel);

struct MomentReport {
  double mean_intensity = 0.0;       // photons
  double intensity_variance = 0.0;   // photons^2
  double quadrature_mean = 0.0;      // of X = a e^{-i theta} + a^dag e^{i theta}
  double quadrature_variance = 0.0;  // may dip below 1 (squeezing is physical)
};

/// Coherent mean field of the output mode: mu = c_j alpha + d_j alpha*, with
/// alpha on the seeded input mode.
std::complex<double> mean_field(const ModeCoefficients& mc, const SeedSpec& seed);

/// Gaussian-state moments with a coherent seed on one input mode and vacuum on
/// the rest, evaluated by Wick's theorem:
///   n_f = sum|d|^2, m_f = sum c_k d_k, mu as above,
///   <n>      = |mu|^2 + n_f
///   Var(n)   = |mu|^2 (2 n_f + 1) + 2 Re(conj(mu)^2 m_f) + n_f (n_f + 1) + |m_f|^2
///   <X>      = 2 Re(mu e^{-i theta})
///   Var(X)   = sum_k |c_k e^{-i theta} + conj(d_k) e^{i theta}|^2
MomentReport compute_moments(const ModeCoefficients& mc, const SeedSpec& seed,
                             double lo_phase);

/// Exact fringe visibility: scans the mean intensity over a 720-point phase
/// grid, refines both extrema by golden section to 1e-10 in phi, and returns
/// (Imax - Imin)/(Imax + Imin).
Evaluated exact_visibility(const InterferometerConfig& cfg, OutputChannel channel);

/// Finite-difference SNR from the exact moments. Intensity detection probes
/// the configured phase with a Richardson-extrapolated central difference
/// (h = 1e-5); homodyne probes the dark fringe with the local-oscillator
/// phase that maximizes the phase response.
Evaluated snr_numeric(const InterferometerConfig& cfg, DetectionScheme scheme,
                      OutputChannel channel);

}  // namespace salhi
