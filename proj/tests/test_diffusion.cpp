#include <random>

#include "avdsprep/diffusion.hpp"
#include "avdsprep/quality.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace avdsprep;

TEST_CASE("diffusivity values") {
  CHECK(diffusivity(0.0, 5.0, 3.31488) == 1.0);
  // v = lambda
  CHECK(diffusivity(25.0, 5.0, 3.31488) == doctest::Approx(0.9636615910752151).epsilon(1e-12));
  // v = 10 lambda
  CHECK(diffusivity(2500.0, 5.0, 3.31488) == doctest::Approx(3.314879948312921e-08).epsilon(1e-9));
}

TEST_CASE("property: diffusivity is non-increasing and continuous at zero") {
  const double lambda = 5.0, c = 3.31488;
  double prev = diffusivity(0.0, lambda, c);
  for (int i = 1; i <= 1000; ++i) {
    const double v2 = i * 0.1;
    const double g = diffusivity(v2, lambda, c);
    CHECK(g <= prev);
    CHECK(g > 0.0);
    prev = g;
  }
  CHECK(diffusivity(1e-30 * lambda * lambda, lambda, c) > 1.0 - 1e-6);
}

TEST_CASE("gaussian kernel") {
  CHECK(gaussian_kernel(0.0).size() == 1);
  const auto k = gaussian_kernel(1.0);
  CHECK(k.size() == 7);
  CHECK(k.sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(k(3) > k(2));
  CHECK(k(2) == doctest::Approx(k(4)).epsilon(1e-15));
}

TEST_CASE("smoothed_gradient_sq") {
  CHECK((smoothed_gradient_sq(Plane::Constant(6, 6, 17.0), 1.5) == 0.0).all());

  Plane ramp(1, 4);
  ramp << 0, 10, 20, 30;
  const Plane g = smoothed_gradient_sq(ramp, 0.0);
  CHECK(g(0, 1) == 100.0);
  CHECK(g(0, 2) == 100.0);
  // mirror boundary gives a zero central difference at the ends
  CHECK(g(0, 0) == 0.0);

  Plane lin(8, 8);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) lin(y, x) = 3.0 * x + 2.0 * y;
  const Plane gl = smoothed_gradient_sq(lin, 0.0);
  for (int y = 1; y < 7; ++y)
    for (int x = 1; x < 7; ++x) CHECK(gl(y, x) == doctest::Approx(13.0).epsilon(1e-12));
}

TEST_CASE("diffuse trivial cases and validation") {
  std::mt19937_64 rng(31);
  const Plane p = testing::random_plane(rng, 7, 9);
  DiffusionConfig cfg;
  cfg.steps = 0;
  CHECK((diffuse(p, cfg) == p).all());

  cfg.steps = 12;
  const Plane flat = Plane::Constant(6, 5, 42.7);
  CHECK((diffuse(flat, cfg) == flat).all());

  DiffusionConfig bad;
  bad.dt = 0.3;
  CHECK_THROWS_AS((void)diffuse(p, bad), InvalidConfig);
  bad = {};
  bad.steps = -1;
  CHECK_THROWS_AS((void)diffuse(p, bad), InvalidConfig);
  bad = {};
  bad.lambda = 0.0;
  CHECK_THROWS_AS((void)diffuse(p, bad), InvalidConfig);
  bad = {};
  bad.sigma = -0.5;
  CHECK_THROWS_AS((void)diffuse(p, bad), InvalidConfig);
}

TEST_CASE("large lambda reduces to the linear heat step") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    const Plane p = testing::random_plane(rng, 6 + trial, 9);
    DiffusionConfig cfg;
    cfg.lambda = 1e9;
    cfg.steps = 1;
    cfg.dt = 0.05 * (trial + 1);
    const Plane got = diffuse(p, cfg);
    const Plane want = oracle::heat_step(p, cfg.dt);
    CHECK((got - want).abs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("property: mass conservation and max principle") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const Plane p = testing::random_plane(rng, testing::random_extent(rng, 1, 14),
                                          testing::random_extent(rng, 1, 14));
    DiffusionConfig cfg;
    cfg.lambda = 1.0 + 4.0 * trial;
    cfg.dt = 0.25;
    cfg.steps = 5 + trial;
    const Plane out = diffuse(p, cfg);
    CHECK(std::abs(out.mean() - p.mean()) <= 1e-9 * p.mean());
    CHECK(out.minCoeff() >= p.minCoeff());
    CHECK(out.maxCoeff() <= p.maxCoeff());
  }
}

TEST_CASE("edge preservation on a noisy step") {
  std::mt19937_64 rng(34);
  const Eigen::Index n = 32;
  const Plane p = testing::noisy_step(rng, n, n, 40.0, 200.0, 3.0);
  DiffusionConfig cfg;
  cfg.lambda = 5.0;
  cfg.steps = 10;
  const Plane out = diffuse(p, cfg);

  // Plateau interiors keep a margin of 4 pixels from the step and border.
  const auto interior_var = [&](const Plane& img) {
    const Plane left = img.block(4, 4, n - 8, n / 2 - 8);
    const Plane right = img.block(4, n / 2 + 4, n - 8, n / 2 - 8);
    return 0.5 * (std::pow(contrast(left), 2) + std::pow(contrast(right), 2));
  };
  const auto step_height = [&](const Plane& img) {
    return img.block(4, n / 2 + 4, n - 8, n / 2 - 8).mean() - img.block(4, 4, n - 8, n / 2 - 8).mean();
  };
  const double var_reduction = 1.0 - interior_var(out) / interior_var(p);
  const double step_reduction = 1.0 - step_height(out) / step_height(p);
  CHECK(var_reduction >= 10.0 * step_reduction);
  CHECK(var_reduction > 0.5);
}
