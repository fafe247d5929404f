#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "salhi/rng.hpp"
#include "salhi/types.hpp"

using namespace salhi;

TEST_CASE("make_gain basic values") {
  const GainFactor identity = make_gain(0.0);
  CHECK(identity.G == 1.0);
  CHECK(identity.g == 0.0);
  CHECK(identity.r == 0.0);

  const GainFactor three = make_gain(std::acosh(3.0));
  CHECK(three.G == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(three.g == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(three.G * three.G - three.g * three.g - 1.0) <= 1e-12);

  const GainFactor five = make_gain(std::acosh(5.0));
  CHECK(five.G == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(five.g == doctest::Approx(std::sqrt(24.0)).epsilon(1e-14));
  CHECK(std::abs(five.G * five.G - five.g * five.g - 1.0) <= 1e-12);
}

TEST_CASE("gain_from_G basic values") {
  CHECK(gain_from_G(1.0).g == 0.0);
  CHECK(gain_from_G(1.0).r == 0.0);
  CHECK(gain_from_G(3.0).g == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));
  CHECK(gain_from_G(5.0).g == doctest::Approx(std::sqrt(24.0)).epsilon(1e-14));
}

TEST_CASE("hyperbola identity and round trip on a random grid") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const double r = uniform_double(rng, 0.0, 5.0);
    const GainFactor gf = make_gain(r);
    CHECK(std::abs(gf.G * gf.G - gf.g * gf.g - 1.0) <= 1e-12);
    CHECK(std::abs(gain_from_G(gf.G).r - r) <= 1e-10);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(make_gain(-0.1), std::domain_error);
  CHECK_THROWS_AS(make_gain(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(make_gain(std::numeric_limits<double>::infinity()),
                  std::domain_error);
  CHECK_THROWS_AS(gain_from_G(0.5), std::domain_error);
  CHECK_THROWS_AS(gain_from_G(std::nan("")), std::domain_error);
}

TEST_CASE("validate_config accepts the paper baseline") {
  const InterferometerConfig cfg = default_config();
  CHECK(validate_config(cfg).empty());
  CHECK(cfg.stage1.G == 3.0);
  CHECK(cfg.stage2.G == 5.0);
  CHECK(cfg.losses.l == 0.96);
  CHECK(cfg.losses.eta == 0.4);
  CHECK(cfg.probe.delta == 1e-3);
  CHECK(cfg.probe.dark_offset == 1e-3);
  CHECK(cfg.seed.mean_photon_number == 1e6);
}

TEST_CASE("validate_config names each violated invariant") {
  InterferometerConfig cfg = default_config();
  cfg.losses.l = 1.2;
  auto errors = validate_config(cfg);
  REQUIRE(errors.size() == 1);
  CHECK(errors[0] == "losses.l out of [0,1]");

  cfg = default_config();
  cfg.stage2 = GainFactor{0.0, 0.5, 0.0};  // hand-built, inconsistent
  errors = validate_config(cfg);
  bool found = false;
  for (const auto& e : errors) found = found || e == "stage2: G < 1";
  CHECK(found);

  cfg = default_config();
  cfg.probe.delta = 0.0;
  cfg.losses.eta = -0.1;
  errors = validate_config(cfg);
  CHECK(errors.size() == 2);
}

TEST_CASE("validation does not mutate the config") {
  const InterferometerConfig cfg = default_config();
  const InterferometerConfig copy = cfg;
  CHECK(validate_config(cfg).empty());
  CHECK(validate_config(cfg).empty());
  CHECK(cfg.stage1.r == copy.stage1.r);
  CHECK(cfg.stage2.r == copy.stage2.r);
  CHECK(cfg.losses.l == copy.losses.l);
  CHECK(cfg.losses.eta == copy.losses.eta);
  CHECK(cfg.seed.mean_photon_number == copy.seed.mean_photon_number);
  CHECK(cfg.probe.phi == copy.probe.phi);
}
