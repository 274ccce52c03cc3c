#pragma once

#include "avdsprep/raster.hpp"

namespace avdsprep {

/// Explicit nonlinear diffusion settings. `lambda` is in gray levels, `sigma`
/// in pixels, `dt` in pseudo-time units per step.
struct DiffusionConfig {
  double lambda = 5.0;
  double c = 3.31488;
  double sigma = 1.0;
  double dt = 0.20;
  int steps = 10;

  void validate() const;
};

/// Edge-stopping diffusivity: 1 at v2 = 0, else 1 - exp(-c / (sqrt(v2)/lambda)^8).
[[nodiscard]] double diffusivity(double v2, double lambda, double c);

/// Sampled Gaussian of radius ceil(3 sigma), normalized to sum 1. sigma = 0
/// gives the identity kernel {1}.
[[nodiscard]] Eigen::ArrayXd gaussian_kernel(double sigma);

/// Separable Gaussian blur with mirror boundary.
[[nodiscard]] Plane gaussian_blur(const Plane& plane, double sigma);

/// (d/dx)^2 + (d/dy)^2 of the Gaussian-smoothed plane, central differences
/// with mirror boundary.
[[nodiscard]] Plane smoothed_gradient_sq(const Plane& plane, double sigma);

/// Runs `config.steps` explicit steps of div(g(|grad u_sigma|^2) grad u) with
/// zero flux across the image border.
[[nodiscard]] Plane diffuse(const Plane& plane, const DiffusionConfig& config = {});

}  // namespace avdsprep
