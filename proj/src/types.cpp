#include "salhi/types.hpp"

#include <cmath>
#include <stdexcept>

namespace salhi {

GainFactor make_gain(double squeeze_argument) {
  if (!std::isfinite(squeeze_argument) || squeeze_argument < 0.0) {
    throw std::domain_error("make_gain: squeeze argument must be finite and >= 0");
  }
  return {squeeze_argument, std::cosh(squeeze_argument), std::sinh(squeeze_argument)};
}

GainFactor gain_from_G(double amplitude_gain) {
  if (!std::isfinite(amplitude_gain) || amplitude_gain < 1.0) {
    throw std::domain_error("gain_from_G: amplitude gain must be finite and >= 1");
  }
  return {std::acosh(amplitude_gain), amplitude_gain,
          std::sqrt(amplitude_gain * amplitude_gain - 1.0)};
}

InterferometerConfig default_config() {
  InterferometerConfig cfg;
  cfg.stage1 = gain_from_G(3.0);
  cfg.stage2 = gain_from_G(5.0);
  cfg.losses = {0.96, 0.4};
  cfg.seed = {SeedKind::Optical, 1.0e6, 0.0};
  cfg.probe = {kPi + 1e-3, 1e-3, 1e-3};
  return cfg;
}

namespace {

void check_stage(const GainFactor& s, const char* name,
                 std::vector<std::string>& errors) {
  if (!std::isfinite(s.r) || !std::isfinite(s.G) || !std::isfinite(s.g)) {
    errors.push_back(std::string(name) + ": non-finite gain value");
    return;
  }
  if (s.r < 0.0) errors.push_back(std::string(name) + ": r < 0");
  if (s.G < 1.0) errors.push_back(std::string(name) + ": G < 1");
  if (s.g < 0.0) errors.push_back(std::string(name) + ": g < 0");
  if (std::abs(s.G * s.G - s.g * s.g - 1.0) > 1e-12) {
    errors.push_back(std::string(name) + ": G^2 - g^2 != 1");
  }
}

}  // namespace

std::vector<std::string> validate_config(const InterferometerConfig& cfg) {
  std::vector<std::string> errors;
  check_stage(cfg.stage1, "stage1", errors);
  check_stage(cfg.stage2, "stage2", errors);

  if (!(cfg.losses.l >= 0.0 && cfg.losses.l <= 1.0)) {
    errors.push_back("losses.l out of [0,1]");
  }
  if (!(cfg.losses.eta >= 0.0 && cfg.losses.eta <= 1.0)) {
    errors.push_back("losses.eta out of [0,1]");
  }

  if (!(cfg.seed.mean_photon_number >= 0.0) ||
      !std::isfinite(cfg.seed.mean_photon_number)) {
    errors.push_back("seed.mean_photon_number must be finite and >= 0");
  }
  if (!std::isfinite(cfg.seed.alpha_phase)) {
    errors.push_back("seed.alpha_phase must be finite");
  }

  if (!(cfg.probe.delta > 0.0) || !std::isfinite(cfg.probe.delta)) {
    errors.push_back("probe.delta must be finite and > 0");
  }
  if (!(cfg.probe.dark_offset >= 0.0) || !std::isfinite(cfg.probe.dark_offset)) {
    errors.push_back("probe.dark_offset must be finite and >= 0");
  }
  if (!std::isfinite(cfg.probe.phi)) {
    errors.push_back("probe.phi must be finite");
  }
  return errors;
}

}  // namespace salhi
