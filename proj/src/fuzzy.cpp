#include "avdsprep/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace avdsprep {

void FuzzyConfig::validate() const {
  if (half < 1) throw InvalidConfig("fuzzy half-size must be >= 1");
  if (fixed_threshold && !(*fixed_threshold > 0.0))
    throw InvalidConfig("fixed fuzzy threshold must be > 0");
  if (!(threshold_scale > 0.0)) throw InvalidConfig("fuzzy threshold scale must be > 0");
}

double membership_weight(double delta, double threshold) {
  return std::max(0.0, 1.0 - std::abs(delta) / threshold);
}

double dynamic_threshold(const Plane& plane, double threshold_scale) {
  const Eigen::Index h = plane.rows();
  const Eigen::Index w = plane.cols();
  const Eigen::Index count = h * (w - 1) + (h - 1) * w;
  if (count <= 0) return 1.0;

  Eigen::ArrayXd diffs(count);
  Eigen::Index n = 0;
  if (w > 1) {
    const Plane dx = plane.rightCols(w - 1) - plane.leftCols(w - 1);
    diffs.segment(n, dx.size()) = dx.reshaped<Eigen::RowMajor>();
    n += dx.size();
  }
  if (h > 1) {
    const Plane dy = plane.bottomRows(h - 1) - plane.topRows(h - 1);
    diffs.segment(n, dy.size()) = dy.reshaped<Eigen::RowMajor>();
  }
  const double mean = diffs.mean();
  const double sigma = std::sqrt((diffs - mean).square().mean());
  return std::max(1.0, threshold_scale * sigma);
}

Plane fuzzy_filter(const Plane& plane, const FuzzyConfig& config) {
  config.validate();
  const double threshold =
      config.fixed_threshold ? *config.fixed_threshold : dynamic_threshold(plane, config.threshold_scale);

  const Eigen::Index half = config.half;
  const Eigen::Index side = 2 * half + 1;
  const Plane padded = mirror_pad(plane, half);
  Plane out(plane.rows(), plane.cols());
  std::vector<double> window(static_cast<std::size_t>(side * side));
  std::vector<double> scratch(window.size());
  const auto mid = static_cast<std::ptrdiff_t>(window.size() / 2);

  for (Eigen::Index y = 0; y < plane.rows(); ++y) {
    for (Eigen::Index x = 0; x < plane.cols(); ++x) {
      std::size_t i = 0;
      for (Eigen::Index dy = 0; dy < side; ++dy)
        for (Eigen::Index dx = 0; dx < side; ++dx) window[i++] = padded(y + dy, x + dx);

      double reference = plane(y, x);
      if (config.impulse_guard) {
        scratch = window;
        std::nth_element(scratch.begin(), scratch.begin() + mid, scratch.end());
        const double median = scratch[static_cast<std::size_t>(mid)];
        if (std::abs(reference - median) > threshold) reference = median;
      }

      // The reference sample is itself in the window with weight 1, so the
      // denominator is at least 1. Accumulating offsets from the reference
      // keeps flat windows exactly flat.
      double num = 0.0;
      double den = 0.0;
      double lo = window.front();
      double hi = window.front();
      for (double s : window) {
        const double delta = s - reference;
        const double wgt = membership_weight(delta, threshold);
        num += wgt * delta;
        den += wgt;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      out(y, x) = std::clamp(reference + num / den, lo, hi);
    }
  }
  return out;
}

}  // namespace avdsprep
