#pragma once

#include <optional>

#include "avdsprep/raster.hpp"

namespace avdsprep {

/// Fuzzy weighted-mean noise filter settings.
///
/// The threshold T bounds the gray-level difference that still earns a
/// non-zero weight. When `fixed_threshold` is empty T is derived from the
/// image itself (see dynamic_threshold).
struct FuzzyConfig {
  int half = 1;
  std::optional<double> fixed_threshold;
  double threshold_scale = 2.0;
  bool impulse_guard = true;

  void validate() const;
};

/// Linear ramp: 1 at zero difference, 0 once |delta| reaches T.
[[nodiscard]] double membership_weight(double delta, double threshold);

/// max(1, c_T * population std of all horizontal and vertical first
/// neighbor differences).
[[nodiscard]] double dynamic_threshold(const Plane& plane, double threshold_scale);

/// Per pixel: sum of W(P_ij - P_ref) * P_ij over the mirror-padded window,
/// divided by the sum of weights. With the impulse guard on, the reference
/// is the window median whenever the center deviates from it by more than T.
[[nodiscard]] Plane fuzzy_filter(const Plane& plane, const FuzzyConfig& config = {});

}  // namespace avdsprep
