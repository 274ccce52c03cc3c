#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "avdsprep/errors.hpp"

namespace avdsprep {

/// Single-channel raster. rows = height, cols = width, row-major storage so
/// that `data()` walks the image in scanline order. Samples live in [0, 255].
template <typename Scalar>
using PlaneT = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Plane = PlaneT<double>;

inline constexpr double kMaxSample = 255.0;

enum class ChannelOrder { Gray, BGR };

/// One or three planes of identical size. In-memory color order is BGR.
class Image {
 public:
  Image() = default;
  explicit Image(Plane gray);
  Image(Plane blue, Plane green, Plane red);
  Image(std::vector<Plane> planes, ChannelOrder order);

  [[nodiscard]] ChannelOrder order() const { return order_; }
  [[nodiscard]] std::size_t channels() const { return planes_.size(); }
  [[nodiscard]] Eigen::Index width() const { return planes_.front().cols(); }
  [[nodiscard]] Eigen::Index height() const { return planes_.front().rows(); }

  [[nodiscard]] const Plane& plane(std::size_t c) const { return planes_.at(c); }
  [[nodiscard]] const std::vector<Plane>& planes() const { return planes_; }

  friend bool operator==(const Image& a, const Image& b);

 private:
  std::vector<Plane> planes_;
  ChannelOrder order_ = ChannelOrder::Gray;
};

/// True when the plane is non-empty and every sample is finite and in [0, 255].
[[nodiscard]] bool is_valid_plane(const Plane& plane);

/// Throws InvalidImage unless is_valid_plane holds.
void require_valid_plane(const Plane& plane);

// ---- PNM codec -----------------------------------------------------------

/// Decodes a binary P5/P6 stream. P6 triplets are reordered to BGR planes and
/// 16-bit samples are rescaled by 255/maxval.
[[nodiscard]] Image load_pnm(std::span<const std::uint8_t> bytes);

/// Encodes as P5 (gray) or P6 (RGB on disk) with maxval 255. Samples are
/// rounded half away from zero and clamped to [0, 255].
[[nodiscard]] std::vector<std::uint8_t> save_pnm(const Image& image);

[[nodiscard]] Image read_pnm_file(const std::string& path);
void write_pnm_file(const std::string& path, const Image& image);

// ---- channels --------------------------------------------------------------

/// Gray input is returned unchanged; BGR uses 0.299 R + 0.587 G + 0.114 B.
[[nodiscard]] Plane to_gray(const Image& image);

// ---- histograms ------------------------------------------------------------

struct Histogram {
  std::vector<std::int64_t> bins;

  [[nodiscard]] std::size_t bin_count() const { return bins.size(); }
  [[nodiscard]] std::int64_t total() const;
};

struct Pdf {
  std::vector<double> probs;

  [[nodiscard]] std::size_t bin_count() const { return probs.size(); }
};

/// Bin index of a sample: floor(s * bins / 256), clamped to [0, bins - 1].
[[nodiscard]] std::size_t bin_of(double sample, std::size_t bin_count);

[[nodiscard]] Histogram histogram(const Plane& plane, std::size_t bin_count = 256);
[[nodiscard]] Pdf normalize(const Histogram& hist);

/// "bin,count" CSV with LF line endings.
[[nodiscard]] std::string histogram_csv(const Histogram& hist);

// ---- windows ---------------------------------------------------------------

/// Mirror reflection without edge repetition: -1 -> 1, n -> n - 2.
/// A length-1 axis reflects every index to 0.
[[nodiscard]] Eigen::Index mirror_index(Eigen::Index i, Eigen::Index n);

/// (2*half+1)^2 neighborhood centered at column x, row y, mirror padded.
[[nodiscard]] Plane window_at(const Plane& plane, Eigen::Index x, Eigen::Index y,
                              Eigen::Index half);

/// Copy of the plane with `pad` mirrored samples on each side.
[[nodiscard]] Plane mirror_pad(const Plane& plane, Eigen::Index pad);

/// Round half away from zero then clamp to [0, 255].
[[nodiscard]] std::uint8_t quantize(double sample);

}  // namespace avdsprep
