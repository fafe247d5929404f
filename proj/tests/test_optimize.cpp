#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "salhi/analytic.hpp"
#include "salhi/optimize.hpp"
#include "salhi/types.hpp"

using namespace salhi;

namespace {

InterferometerConfig config(double G1, double G2, double l, double eta) {
  InterferometerConfig cfg = default_config();
  cfg.stage1 = gain_from_G(G1);
  cfg.stage2 = gain_from_G(G2);
  cfg.losses = {l, eta};
  return cfg;
}

}  // namespace

TEST_CASE("visibility optimization hits the closed-form balance point") {
  const OptimizeOutcome easy = optimize_g2(config(3, 5, 0.6, 0.4),
                                           Objective::Visibility,
                                           DetectionScheme::Intensity);
  CHECK(easy.exact);
  CHECK(easy.stage2.G == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(easy.value == doctest::Approx(1.0).epsilon(1e-12));

  const OptimizeOutcome hard = optimize_g2(config(3, 5, 0.96, 0.4),
                                           Objective::Visibility,
                                           DetectionScheme::Intensity);
  CHECK(hard.exact);
  CHECK(hard.stage2.G == doctest::Approx(1.0397504898200727).epsilon(1e-9));
  CHECK(hard.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unsatisfiable balance condition is flat and lands on a bound") {
  const OptimizeOutcome o = optimize_g2(config(1, 5, 0.6, 0.4),
                                        Objective::Visibility,
                                        DetectionScheme::Intensity);
  CHECK_FALSE(o.exact);
  CHECK(o.flat);
  CHECK(o.stage2.G == 1.0);
}

TEST_CASE("snr optimization coincides with the visibility optimum under ID") {
  const InterferometerConfig base = config(3, 5, 0.6, 0.4);
  const OptimizeOutcome ov =
      optimize_g2(base, Objective::Visibility, DetectionScheme::Intensity);
  const OptimizeOutcome os =
      optimize_g2(base, Objective::Snr, DetectionScheme::Intensity);
  CHECK(std::abs(ov.stage2.G - os.stage2.G) <= 1e-3);
  CHECK(os.value >= snr_su_id(base).value);
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS(optimize_g2(default_config(), Objective::Both,
                              DetectionScheme::Intensity),
                  std::invalid_argument);
  CHECK_THROWS_AS(optimize_g2(default_config(), Objective::Visibility,
                              DetectionScheme::Intensity, 0.5, 10.0),
                  std::invalid_argument);
}

TEST_CASE("coincidence report separates the two schemes") {
  InterferometerConfig base = default_config();
  const SweepGrid grid{0.5, 0.9, 5};
  const auto id_rows = coincidence_report(base, grid, DetectionScheme::Intensity);
  REQUIRE(id_rows.size() == 5);
  for (const auto& row : id_rows) {
    CHECK(row.difference <= 1e-3);
  }
  const auto bhd_rows = coincidence_report(base, grid, DetectionScheme::Homodyne);
  double worst = 0.0;
  for (const auto& row : bhd_rows) worst = std::max(worst, row.difference);
  CHECK(worst > 1e-2);
}

TEST_CASE("balance loss closed form") {
  const InterferometerConfig cfg = default_config();
  const double l_b = condition_loss(cfg.stage1, cfg.stage2, cfg.losses.eta);
  CHECK(l_b == doctest::Approx(0.488).epsilon(1e-12));

  InterferometerConfig at_balance = cfg;
  at_balance.losses.l = l_b;
  CHECK(std::abs(condition_residual(at_balance, DetectionScheme::Intensity)) <=
        1e-12);
  CHECK(visibility_su(at_balance).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("optimized recombination gain rides the bound until the balance loss") {
  InterferometerConfig base = config(3, 5, 0.5, 0.4);
  const double l_bound =
      condition_loss(base.stage1, gain_from_G(10.0), base.losses.eta);

  InterferometerConfig before = base;
  before.losses.l = l_bound - 0.05;
  const OptimizeOutcome at_bound =
      optimize_g2(before, Objective::Visibility, DetectionScheme::Intensity);
  CHECK_FALSE(at_bound.exact);
  CHECK(at_bound.stage2.G == doctest::Approx(10.0).epsilon(1e-9));

  InterferometerConfig after = base;
  after.losses.l = 0.6;
  const OptimizeOutcome interior =
      optimize_g2(after, Objective::Visibility, DetectionScheme::Intensity);
  CHECK(interior.exact);
  CHECK(interior.stage2.G == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("run_sweep basic contracts") {
  SweepSpec spec;
  spec.base = default_config();
  spec.swept = SweptParameter::LossL;

  SUBCASE("two-point grid, sorted") {
    spec.grid = {0.2, 0.7, 2};
    const SweepResult r = run_sweep(spec);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].swept_value == 0.2);
    CHECK(r.rows[1].swept_value == 0.7);
  }

  SUBCASE("fixed-gain visibility falls with loss past the balance point") {
    spec.grid = {0.6, 0.96, 10};
    const SweepResult r = run_sweep(spec);
    CHECK(r.rows.front().visibility_su == doctest::Approx(0.99243).epsilon(1e-4));
    CHECK(r.rows.back().visibility_su == doctest::Approx(0.51851).epsilon(1e-4));
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      CHECK(r.rows[i].visibility_su < r.rows[i - 1].visibility_su);
    }
  }

  SUBCASE("optimized sweep reports unit visibility wherever exact") {
    spec.grid = {0.6, 0.96, 10};
    spec.objective = Objective::Visibility;
    const SweepResult r = run_sweep(spec);
    int exact_rows = 0;
    for (const auto& row : r.rows) {
      if (row.exact) {
        ++exact_rows;
        CHECK(row.visibility_su == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
    CHECK(exact_rows == 10);
  }

  SUBCASE("deterministic output") {
    spec.grid = {0.1, 0.9, 7};
    spec.objective = Objective::Both;
    const SweepResult a = run_sweep(spec);
    const SweepResult b = run_sweep(spec);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(std::memcmp(&a.rows[i], &b.rows[i], sizeof(SweepRow)) == 0);
    }
  }

  SUBCASE("invalid grids are rejected") {
    spec.grid = {0.9, 0.1, 5};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.grid = {0.1, 0.9, 1};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.grid = {0.1, 1.2, 5};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  }
}

TEST_CASE("optimization dominates the fixed-gain curves") {
  for (int i = 0; i <= 8; ++i) {
    InterferometerConfig cfg = default_config();
    cfg.losses.l = 0.1 + 0.8 * i / 8.0;
    const double v0 = visibility_su(cfg).value;
    const double s0 = snr_su_id(cfg).value;
    const OptimizeOutcome ov =
        optimize_g2(cfg, Objective::Visibility, DetectionScheme::Intensity);
    const OptimizeOutcome os =
        optimize_g2(cfg, Objective::Snr, DetectionScheme::Intensity);
    CHECK(ov.value >= v0 - 1e-12);
    CHECK(os.value >= s0 * (1.0 - 1e-12));
  }
}

TEST_CASE("phi sweep holds losses fixed") {
  SweepSpec spec;
  spec.base = default_config();
  spec.swept = SweptParameter::Phi;
  spec.grid = {0.1, 2.0 * kPi, 9};
  const SweepResult r = run_sweep(spec);
  REQUIRE(r.rows.size() == 9);
  for (const auto& row : r.rows) {
    CHECK(row.visibility_su == r.rows[0].visibility_su);
    CHECK(row.visibility_mz == r.rows[0].visibility_mz);
  }
}
