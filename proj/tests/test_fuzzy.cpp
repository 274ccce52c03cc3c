#include <random>

#include "avdsprep/fuzzy.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace avdsprep;

TEST_CASE("membership_weight ramp") {
  CHECK(membership_weight(0.0, 50.0) == 1.0);
  CHECK(membership_weight(50.0, 50.0) == 0.0);
  CHECK(membership_weight(-50.0, 50.0) == 0.0);
  CHECK(membership_weight(25.0, 50.0) == 0.5);
  CHECK(membership_weight(-25.0, 50.0) == 0.5);
  CHECK(membership_weight(80.0, 50.0) == 0.0);
}

TEST_CASE("property: membership weight is monotone in |delta|") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-300, 300);
  for (int i = 0; i < 1000; ++i) {
    const double a = d(rng), b = d(rng), t = std::abs(d(rng)) + 0.5;
    if (std::abs(a) <= std::abs(b)) CHECK(membership_weight(a, t) >= membership_weight(b, t));
  }
}

TEST_CASE("dynamic_threshold") {
  CHECK(dynamic_threshold(Plane::Constant(5, 7, 33.0), 2.0) == 1.0);

  Plane pair(1, 2);
  pair << 0, 10;
  CHECK(dynamic_threshold(pair, 2.0) == 1.0);

  Plane checker(4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) checker(y, x) = (x + y) % 2 == 0 ? 0.0 : 100.0;
  CHECK(dynamic_threshold(checker, 1.0) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(dynamic_threshold(Plane::Constant(1, 1, 4.0), 2.0) == 1.0);
}

TEST_CASE("fuzzy_filter impulse example") {
  Plane p = Plane::Constant(3, 3, 10.0);
  p(1, 1) = 200.0;
  FuzzyConfig cfg;
  cfg.fixed_threshold = 50.0;

  cfg.impulse_guard = false;
  CHECK(fuzzy_filter(p, cfg)(1, 1) == 200.0);

  cfg.impulse_guard = true;
  CHECK(fuzzy_filter(p, cfg)(1, 1) == 10.0);
}

TEST_CASE("fuzzy_filter config validation") {
  const Plane p = Plane::Constant(3, 3, 1.0);
  FuzzyConfig bad;
  bad.half = 0;
  CHECK_THROWS_AS((void)fuzzy_filter(p, bad), InvalidConfig);
  bad = {};
  bad.fixed_threshold = 0.0;
  CHECK_THROWS_AS((void)fuzzy_filter(p, bad), InvalidConfig);
  bad = {};
  bad.threshold_scale = -1.0;
  CHECK_THROWS_AS((void)fuzzy_filter(p, bad), InvalidConfig);
}

TEST_CASE("property: fuzzy_filter matches the literal weighted mean") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Plane p = testing::random_plane(rng, testing::random_extent(rng, 1, 10),
                                          testing::random_extent(rng, 1, 10));
    FuzzyConfig cfg;
    cfg.half = static_cast<int>(testing::random_extent(rng, 1, 2));
    cfg.impulse_guard = trial % 2 == 0;
    cfg.fixed_threshold = 20.0 + trial * 7.0;
    const Plane out = fuzzy_filter(p, cfg);
    for (Eigen::Index y = 0; y < p.rows(); ++y)
      for (Eigen::Index x = 0; x < p.cols(); ++x)
        CHECK(out(y, x) == doctest::Approx(oracle::fuzzy_pixel(p, y, x, cfg.half, *cfg.fixed_threshold,
                                                               cfg.impulse_guard))
                               .epsilon(1e-12));
  }
}

TEST_CASE("property: fuzzy output stays within its window and fixes constants") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const Plane p = testing::random_plane(rng, 9, 11);
    FuzzyConfig cfg;
    cfg.half = 1 + trial % 2;
    cfg.impulse_guard = trial % 3 != 0;
    const Plane out = fuzzy_filter(p, cfg);
    for (Eigen::Index y = 0; y < p.rows(); ++y) {
      for (Eigen::Index x = 0; x < p.cols(); ++x) {
        const Plane win = window_at(p, x, y, cfg.half);
        CHECK(out(y, x) >= win.minCoeff());
        CHECK(out(y, x) <= win.maxCoeff());
      }
    }
    const Plane flat = Plane::Constant(5, 6, 0.1 * trial + 0.3);
    CHECK((fuzzy_filter(flat, cfg) == flat).all());
  }
}

TEST_CASE("property: huge threshold approaches the plain window mean") {
  // With a linear ramp the residual bias is second order in delta/T:
  // |out - mean| <= 2 * max|delta|^2 / T.
  FuzzyConfig cfg;
  cfg.fixed_threshold = 1e12;
  cfg.impulse_guard = false;
  std::mt19937_64 rng(23);
  for (double span : {20.0, 255.0}) {
    const Plane p = testing::random_plane(rng, 8, 8, 0.0, span);
    const Plane out = fuzzy_filter(p, cfg);
    double worst = 0.0;
    for (Eigen::Index y = 0; y < p.rows(); ++y)
      for (Eigen::Index x = 0; x < p.cols(); ++x)
        worst = std::max(worst, std::abs(out(y, x) - window_at(p, x, y, 1).mean()));
    CHECK(worst <= 2.0 * span * span / *cfg.fixed_threshold + 1e-12);
    if (span <= 20.0) CHECK(worst <= 1e-9);
  }
}
