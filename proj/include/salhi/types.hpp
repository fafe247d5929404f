#pragma once

#include <limits>
#include <string>
#include <vector>

namespace salhi {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// One Raman stage's gain pair on the hyperbola G^2 - g^2 = 1. The squeeze
// argument r is the authoritative value; G and g are derived from it so the
// hyperbola constraint cannot drift in long sweeps.
struct GainFactor {
  double r = 0.0;  // squeeze argument, >= 0
  double G = 1.0;  // amplitude gain, cosh(r), >= 1
  double g = 0.0;  // conversion gain, sinh(r), >= 0
};

/// Builds a gain pair from the squeeze argument. Throws std::domain_error
/// for negative or non-finite input.
GainFactor make_gain(double squeeze_argument);

/// Builds a gain pair from the amplitude gain G >= 1 (g = sqrt(G^2-1),
/// r = arccosh(G)). Throws std::domain_error for G < 1 or non-finite G.
GainFactor gain_from_G(double amplitude_gain);

struct LossParams {
  double l = 0.0;    // optical internal-loss fraction, in [0,1]
  double eta = 0.0;  // atomic dephasing fraction, in [0,1]
};

enum class SeedKind { Optical, Atomic };

struct SeedSpec {
  SeedKind kind = SeedKind::Optical;
  double mean_photon_number = 1.0e6;  // |alpha|^2 of the coherent seed
  double alpha_phase = 0.0;           // phase of the coherent amplitude, rad
};

struct ProbeSettings {
  double phi = kPi + 1e-3;    // interferometer phase, rad
  double delta = 1e-3;        // modulation amplitude, rad, << 1
  double dark_offset = 1e-3;  // offset used when probing phi = pi + offset
};

struct InterferometerConfig {
  GainFactor stage1;  // wave-splitting stage
  GainFactor stage2;  // wave-recombination stage
  LossParams losses;
  SeedSpec seed;
  ProbeSettings probe;
};

/// Paper-baseline configuration: G1=3, G2=5, l=0.96, eta=0.4, optical seed
/// with 1e6 photons, probe at the dark point pi + 1e-3.
InterferometerConfig default_config();

/// Returns one message per violated invariant; empty means the config is
/// valid. Never clamps or repairs.
std::vector<std::string> validate_config(const InterferometerConfig& cfg);

// Scalar result with an out-of-band flag so CSV output stays free of inf/nan.
enum class EvalFlag { Ok, UndefinedFringe, Infinite };

inline constexpr double kInfiniteSentinel = std::numeric_limits<double>::max();

struct Evaluated {
  double value = 0.0;
  EvalFlag flag = EvalFlag::Ok;
  bool ok() const { return flag == EvalFlag::Ok; }
};

enum class DetectionScheme { Intensity, Homodyne };

}  // namespace salhi
