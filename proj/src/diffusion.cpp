#include "avdsprep/diffusion.hpp"

#include <algorithm>
#include <cmath>

namespace avdsprep {

void DiffusionConfig::validate() const {
  if (!(dt > 0.0 && dt <= 0.25)) throw InvalidConfig("diffusion dt must be in (0, 0.25]");
  if (steps < 0) throw InvalidConfig("diffusion steps must be >= 0");
  if (!(lambda > 0.0)) throw InvalidConfig("diffusion lambda must be > 0");
  if (!(c > 0.0)) throw InvalidConfig("diffusion c must be > 0");
  if (!(sigma >= 0.0)) throw InvalidConfig("diffusion sigma must be >= 0");
}

double diffusivity(double v2, double lambda, double c) {
  if (v2 <= 0.0) return 1.0;
  // (v / lambda)^8 == (v2 / lambda^2)^4
  const double r = v2 / (lambda * lambda);
  const double r2 = r * r;
  return 1.0 - std::exp(-c / (r2 * r2));
}

Eigen::ArrayXd gaussian_kernel(double sigma) {
  if (sigma <= 0.0) return Eigen::ArrayXd::Ones(1);
  const auto radius = static_cast<Eigen::Index>(std::ceil(3.0 * sigma));
  Eigen::ArrayXd k(2 * radius + 1);
  for (Eigen::Index i = -radius; i <= radius; ++i)
    k(i + radius) = std::exp(-0.5 * static_cast<double>(i * i) / (sigma * sigma));
  return k / k.sum();
}

Plane gaussian_blur(const Plane& plane, double sigma) {
  if (sigma <= 0.0) return plane;
  const Eigen::ArrayXd kernel = gaussian_kernel(sigma);
  const Eigen::Index radius = kernel.size() / 2;
  const Eigen::Index h = plane.rows();
  const Eigen::Index w = plane.cols();

  Plane rows_done(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      double acc = 0.0;
      for (Eigen::Index i = -radius; i <= radius; ++i)
        acc += kernel(i + radius) * plane(y, mirror_index(x + i, w));
      rows_done(y, x) = acc;
    }
  }
  Plane out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      double acc = 0.0;
      for (Eigen::Index i = -radius; i <= radius; ++i)
        acc += kernel(i + radius) * rows_done(mirror_index(y + i, h), x);
      out(y, x) = acc;
    }
  }
  return out;
}

Plane smoothed_gradient_sq(const Plane& plane, double sigma) {
  const Plane u = gaussian_blur(plane, sigma);
  const Eigen::Index h = u.rows();
  const Eigen::Index w = u.cols();
  Plane out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    const Eigen::Index up = mirror_index(y - 1, h);
    const Eigen::Index down = mirror_index(y + 1, h);
    for (Eigen::Index x = 0; x < w; ++x) {
      const double gx = 0.5 * (u(y, mirror_index(x + 1, w)) - u(y, mirror_index(x - 1, w)));
      const double gy = 0.5 * (u(down, x) - u(up, x));
      out(y, x) = gx * gx + gy * gy;
    }
  }
  return out;
}

Plane diffuse(const Plane& plane, const DiffusionConfig& config) {
  config.validate();
  Plane u = plane;
  const Eigen::Index h = u.rows();
  const Eigen::Index w = u.cols();
  Plane g(h, w);
  Plane next(h, w);

  for (int step = 0; step < config.steps; ++step) {
    const Plane v2 = smoothed_gradient_sq(u, config.sigma);
    g = v2.unaryExpr([&](double s) { return diffusivity(s, config.lambda, config.c); });

    // Flux across each interior edge; border edges carry none (the ghost
    // neighbor equals the pixel itself), so the update conserves mass.
    for (Eigen::Index y = 0; y < h; ++y) {
      for (Eigen::Index x = 0; x < w; ++x) {
        const double center = u(y, x);
        const double gc = g(y, x);
        double flux = 0.0;
        double lo = center;
        double hi = center;
        const auto edge = [&](Eigen::Index ny, Eigen::Index nx) {
          const double n = u(ny, nx);
          flux += 0.5 * (gc + g(ny, nx)) * (n - center);
          lo = std::min(lo, n);
          hi = std::max(hi, n);
        };
        if (y > 0) edge(y - 1, x);
        if (y + 1 < h) edge(y + 1, x);
        if (x > 0) edge(y, x - 1);
        if (x + 1 < w) edge(y, x + 1);
        // The update is a convex combination of the stencil; the clamp only
        // absorbs last-bit rounding.
        next(y, x) = std::clamp(center + config.dt * flux, lo, hi);
      }
    }
    std::swap(u, next);
  }
  return u;
}

}  // namespace avdsprep
