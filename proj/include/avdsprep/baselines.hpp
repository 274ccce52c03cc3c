#pragma once

#include <array>

#include "avdsprep/raster.hpp"

namespace avdsprep {

struct ClaheConfig {
  int tiles_x = 8;
  int tiles_y = 8;
  double clip_limit = 2.0;  ///< multiple of the uniform bin height tile_pixels / 256

  void validate() const;
};

using LevelMap = std::array<double, 256>;

/// Equalization map from a 256-bin histogram: round(255 (cdf(v) - cdf_min) /
/// (1 - cdf_min)). With at most one populated level the map is the identity
/// and `degenerate` is set.
[[nodiscard]] LevelMap equalization_map(const std::array<double, 256>& counts, bool& degenerate);

/// Global histogram equalization on 256 levels. A single-level plane is
/// returned unchanged.
[[nodiscard]] Plane hist_equalize(const Plane& plane);

/// Contrast-limited adaptive histogram equalization with bilinear blending of
/// tile maps.
[[nodiscard]] Plane clahe(const Plane& plane, const ClaheConfig& config = {});

}  // namespace avdsprep
