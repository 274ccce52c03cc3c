#include "avdsprep/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace avdsprep {

namespace {

std::array<double, 256> level_counts(const Plane& plane, Eigen::Index top, Eigen::Index left,
                                     Eigen::Index rows, Eigen::Index cols) {
  std::array<double, 256> counts{};
  for (Eigen::Index y = top; y < top + rows; ++y)
    for (Eigen::Index x = left; x < left + cols; ++x) counts[quantize(plane(y, x))] += 1.0;
  return counts;
}

LevelMap identity_map() {
  LevelMap m{};
  for (std::size_t v = 0; v < m.size(); ++v) m[v] = static_cast<double>(v);
  return m;
}

// Tile boundaries along one axis; the last tile absorbs the remainder.
std::vector<Eigen::Index> tile_starts(Eigen::Index length, int tiles) {
  std::vector<Eigen::Index> starts(static_cast<std::size_t>(tiles) + 1);
  const Eigen::Index size = length / tiles;
  for (int t = 0; t < tiles; ++t) starts[static_cast<std::size_t>(t)] = t * size;
  starts.back() = length;
  return starts;
}

// Neighbouring tile indices and the weight of the second one for a
// coordinate, given tile centers.
struct Blend {
  std::size_t first;
  std::size_t second;
  double weight;
};

Blend blend_at(double coord, const std::vector<double>& centers) {
  if (centers.size() == 1 || coord <= centers.front()) return {0, 0, 0.0};
  if (coord >= centers.back()) return {centers.size() - 1, centers.size() - 1, 0.0};
  std::size_t i = 0;
  while (coord >= centers[i + 1]) ++i;
  return {i, i + 1, (coord - centers[i]) / (centers[i + 1] - centers[i])};
}

}  // namespace

void ClaheConfig::validate() const {
  if (tiles_x < 1 || tiles_y < 1) throw InvalidConfig("CLAHE tile counts must be >= 1");
  if (!(clip_limit >= 1.0)) throw InvalidConfig("CLAHE clip limit must be >= 1");
}

LevelMap equalization_map(const std::array<double, 256>& counts, bool& degenerate) {
  double total = 0.0;
  std::size_t populated = 0;
  for (double c : counts) {
    total += c;
    if (c > 0.0) ++populated;
  }
  degenerate = populated <= 1;
  if (degenerate) return identity_map();

  LevelMap m{};
  double running = 0.0;
  double cdf_min = -1.0;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    running += counts[v];
    const double cdf = running / total;
    if (cdf_min < 0.0 && counts[v] > 0.0) cdf_min = cdf;
    m[v] = cdf_min < 0.0 ? 0.0 : std::round(kMaxSample * (cdf - cdf_min) / (1.0 - cdf_min));
  }
  return m;
}

Plane hist_equalize(const Plane& plane) {
  bool degenerate = false;
  const LevelMap map =
      equalization_map(level_counts(plane, 0, 0, plane.rows(), plane.cols()), degenerate);
  if (degenerate) return plane;
  return plane.unaryExpr([&](double s) { return map[quantize(s)]; });
}

Plane clahe(const Plane& plane, const ClaheConfig& config) {
  config.validate();
  // Never more tiles than pixels along an axis.
  const int tiles_x = static_cast<int>(std::min<Eigen::Index>(config.tiles_x, plane.cols()));
  const int tiles_y = static_cast<int>(std::min<Eigen::Index>(config.tiles_y, plane.rows()));
  const auto xs = tile_starts(plane.cols(), tiles_x);
  const auto ys = tile_starts(plane.rows(), tiles_y);

  std::vector<LevelMap> maps;
  maps.reserve(static_cast<std::size_t>(tiles_x * tiles_y));
  bool all_degenerate = true;
  for (int ty = 0; ty < tiles_y; ++ty) {
    for (int tx = 0; tx < tiles_x; ++tx) {
      const Eigen::Index top = ys[static_cast<std::size_t>(ty)];
      const Eigen::Index left = xs[static_cast<std::size_t>(tx)];
      const Eigen::Index rows = ys[static_cast<std::size_t>(ty) + 1] - top;
      const Eigen::Index cols = xs[static_cast<std::size_t>(tx) + 1] - left;
      auto counts = level_counts(plane, top, left, rows, cols);
      // Single-level tiles stay degenerate even though clipping would spread them.
      const bool single_level = std::count_if(counts.begin(), counts.end(),
                                              [](double c) { return c > 0.0; }) <= 1;

      const double limit = config.clip_limit * static_cast<double>(rows * cols) / 256.0;
      double excess = 0.0;
      for (double& c : counts) {
        if (c > limit) {
          excess += c - limit;
          c = limit;
        }
      }
      if (excess > 0.0) {
        const double share = excess / 256.0;
        for (double& c : counts) c += share;
      }
      bool degenerate = single_level;
      if (single_level)
        maps.push_back(identity_map());
      else
        maps.push_back(equalization_map(counts, degenerate));
      all_degenerate = all_degenerate && degenerate;
    }
  }
  if (all_degenerate && maps.size() == 1) return plane;
  // A constant plane has every tile degenerate; keep it exactly.
  if (all_degenerate && (plane == plane(0, 0)).all()) return plane;

  std::vector<double> cx(static_cast<std::size_t>(tiles_x));
  std::vector<double> cy(static_cast<std::size_t>(tiles_y));
  for (std::size_t t = 0; t < cx.size(); ++t) cx[t] = 0.5 * static_cast<double>(xs[t] + xs[t + 1] - 1);
  for (std::size_t t = 0; t < cy.size(); ++t) cy[t] = 0.5 * static_cast<double>(ys[t] + ys[t + 1] - 1);

  const auto map_at = [&](std::size_t ty, std::size_t tx) -> const LevelMap& {
    return maps[ty * static_cast<std::size_t>(tiles_x) + tx];
  };

  Plane out(plane.rows(), plane.cols());
  for (Eigen::Index y = 0; y < plane.rows(); ++y) {
    const Blend by = blend_at(static_cast<double>(y), cy);
    for (Eigen::Index x = 0; x < plane.cols(); ++x) {
      const Blend bx = blend_at(static_cast<double>(x), cx);
      const std::uint8_t level = quantize(plane(y, x));
      const double top = bx.weight == 0.0
                             ? map_at(by.first, bx.first)[level]
                             : (1.0 - bx.weight) * map_at(by.first, bx.first)[level] +
                                   bx.weight * map_at(by.first, bx.second)[level];
      if (by.weight == 0.0) {
        out(y, x) = top;
        continue;
      }
      const double bottom = bx.weight == 0.0
                                ? map_at(by.second, bx.first)[level]
                                : (1.0 - bx.weight) * map_at(by.second, bx.first)[level] +
                                      bx.weight * map_at(by.second, bx.second)[level];
      out(y, x) = std::clamp((1.0 - by.weight) * top + by.weight * bottom, 0.0, kMaxSample);
    }
  }
  return out;
}

}  // namespace avdsprep
