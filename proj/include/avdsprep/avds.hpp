#pragma once

#include <array>
#include <string>
#include <string_view>

#include "avdsprep/raster.hpp"

namespace avdsprep {

/// Distance used to score a sub-window against the filtered pixel. The
/// enumerator order is the tie-break order for adaptive selection.
enum class DistanceKind { Euclidean = 0, Bhattacharya = 1, Manhattan = 2, Hamming = 3 };

inline constexpr std::array<DistanceKind, 4> kAllDistanceKinds = {
    DistanceKind::Euclidean, DistanceKind::Bhattacharya, DistanceKind::Manhattan,
    DistanceKind::Hamming};

[[nodiscard]] std::string_view to_string(DistanceKind kind);       // "euclidean", ...
[[nodiscard]] std::string_view display_name(DistanceKind kind);    // "Euclidean", ...
[[nodiscard]] DistanceKind parse_distance_kind(std::string_view text);

struct AvdsConfig {
  int k = 3;             ///< sub-window side; the full mask is (2k-1) x (2k-1)
  double omega = 2.0;    ///< inverse-distance exponent
  int bd_bins = 16;      ///< histogram bins for the Bhattacharya distance
  double epsilon = 1e-9; ///< distances below this count as exact matches

  void validate() const;
};

enum class SubWindow { NW = 0, NE = 1, SW = 2, SE = 3, C = 4 };

inline constexpr std::size_t kSubWindowCount = 5;

/// Row/column offset of a sub-window's top-left sample relative to the
/// filtered pixel.
struct Offset {
  int dy;
  int dx;
};

[[nodiscard]] Offset subwindow_origin(SubWindow which, int k);

/// The five k x k patches around one pixel, each in row-major order.
struct SubWindowSet {
  std::array<Plane, kSubWindowCount> patches;
  double center_value = 0.0;

  [[nodiscard]] const Plane& operator[](SubWindow w) const {
    return patches[static_cast<std::size_t>(w)];
  }
};

[[nodiscard]] SubWindowSet subwindows(const Plane& plane, Eigen::Index x, Eigen::Index y, int k);

/// Distance between a patch and the center value replicated over the patch.
[[nodiscard]] double distance(std::span<const double> patch, double center_value, DistanceKind kind,
                              const AvdsConfig& config = {});

[[nodiscard]] inline double distance(const Plane& patch, double center_value, DistanceKind kind,
                                     const AvdsConfig& config = {}) {
  return distance(std::span<const double>(patch.data(), static_cast<std::size_t>(patch.size())),
                  center_value, kind, config);
}

/// Inverse-distance weighted mean of the sub-window means:
/// sum mu_i (1/D_i)^omega / sum (1/D_i)^omega. When any D_i < epsilon the
/// result is the plain mean of the means of exactly those sub-windows.
[[nodiscard]] double combine_means(const std::array<double, kSubWindowCount>& means,
                                   const std::array<double, kSubWindowCount>& distances,
                                   double omega, double epsilon);

[[nodiscard]] Plane avds_single(const Plane& plane, DistanceKind kind, const AvdsConfig& config = {});

struct AvdsOutcome {
  std::array<Plane, 4> outputs;
  std::array<double, 4> contrasts{};
  DistanceKind chosen = DistanceKind::Euclidean;
  Plane chosen_output;

  [[nodiscard]] const Plane& output(DistanceKind kind) const {
    return outputs[static_cast<std::size_t>(kind)];
  }
  [[nodiscard]] double contrast_of(DistanceKind kind) const {
    return contrasts[static_cast<std::size_t>(kind)];
  }
};

/// All four single-kind filters, then the kind whose output has the largest
/// contrast (earliest kind wins ties).
[[nodiscard]] AvdsOutcome avds_adaptive(const Plane& plane, const AvdsConfig& config = {});

/// Index of the largest contrast, earliest index on ties.
[[nodiscard]] DistanceKind argmax_contrast(const std::array<double, 4>& contrasts);

}  // namespace avdsprep
