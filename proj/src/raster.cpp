#include "avdsprep/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace avdsprep {

namespace {

void require_same_size(const std::vector<Plane>& planes) {
  for (const auto& p : planes) {
    if (p.rows() != planes.front().rows() || p.cols() != planes.front().cols())
      throw InvalidImage("image planes differ in size");
  }
}

// Netpbm header tokenizer: whitespace separated, '#' comments run to end of line.
class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::string magic() {
    if (bytes_.size() < 2) throw MalformedHeader("stream too short for a PNM magic");
    std::string m{static_cast<char>(bytes_[0]), static_cast<char>(bytes_[1])};
    pos_ = 2;
    return m;
  }

  std::uint64_t number(const char* what) {
    skip_space_and_comments();
    std::uint64_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<std::uint32_t>::max())
        throw MalformedHeader(std::string("PNM ") + what + " out of range");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw MalformedHeader(std::string("PNM ") + what + " missing");
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
      throw MalformedHeader("PNM header not terminated by whitespace");
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image::Image(Plane gray) : order_(ChannelOrder::Gray) {
  planes_.push_back(std::move(gray));
}

Image::Image(Plane blue, Plane green, Plane red) : order_(ChannelOrder::BGR) {
  planes_.reserve(3);
  planes_.push_back(std::move(blue));
  planes_.push_back(std::move(green));
  planes_.push_back(std::move(red));
  require_same_size(planes_);
}

Image::Image(std::vector<Plane> planes, ChannelOrder order)
    : planes_(std::move(planes)), order_(order) {
  const std::size_t expected = order == ChannelOrder::Gray ? 1 : 3;
  if (planes_.size() != expected)
    throw InvalidImage("plane count does not match channel order");
  require_same_size(planes_);
}

bool operator==(const Image& a, const Image& b) {
  if (a.order_ != b.order_ || a.planes_.size() != b.planes_.size()) return false;
  for (std::size_t c = 0; c < a.planes_.size(); ++c) {
    const auto& pa = a.planes_[c];
    const auto& pb = b.planes_[c];
    if (pa.rows() != pb.rows() || pa.cols() != pb.cols()) return false;
    if (!(pa == pb).all()) return false;
  }
  return true;
}

bool is_valid_plane(const Plane& plane) {
  if (plane.size() == 0) return false;
  return plane.allFinite() && plane.minCoeff() >= 0.0 && plane.maxCoeff() <= kMaxSample;
}

void require_valid_plane(const Plane& plane) {
  if (!is_valid_plane(plane))
    throw InvalidImage("plane is empty or has samples outside [0, 255]");
}

Image load_pnm(std::span<const std::uint8_t> bytes) {
  HeaderReader reader(bytes);
  const std::string magic = reader.magic();
  if (magic != "P5" && magic != "P6") throw MalformedHeader("unsupported PNM magic '" + magic + "'");
  const auto width = reader.number("width");
  const auto height = reader.number("height");
  const auto maxval = reader.number("maxval");
  if (width == 0 || height == 0) throw MalformedHeader("PNM dimensions must be positive");
  if (maxval == 0 || maxval > 65535) throw UnsupportedMaxval("PNM maxval must be in [1, 65535]");
  const std::size_t offset = reader.raster_offset();

  const std::size_t channels = magic == "P5" ? 1 : 3;
  const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
  const std::uint64_t needed = width * height * channels * sample_bytes;
  if (bytes.size() < offset || bytes.size() - offset < needed)
    throw Truncated("PNM payload shorter than header dimensions");

  const double scale = sample_bytes == 2 ? kMaxSample / static_cast<double>(maxval) : 1.0;
  const auto w = static_cast<Eigen::Index>(width);
  const auto h = static_cast<Eigen::Index>(height);
  std::vector<Plane> planes(channels, Plane(h, w));
  const std::uint8_t* p = bytes.data() + offset;
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      for (std::size_t c = 0; c < channels; ++c) {
        double v;
        if (sample_bytes == 2) {
          v = static_cast<double>((p[0] << 8) | p[1]) * scale;
          p += 2;
        } else {
          v = *p++;
        }
        // Disk order is RGB; planes are stored B, G, R.
        const std::size_t plane = channels == 3 ? 2 - c : 0;
        planes[plane](y, x) = std::min(v, kMaxSample);
      }
    }
  }
  return Image(std::move(planes), channels == 3 ? ChannelOrder::BGR : ChannelOrder::Gray);
}

std::uint8_t quantize(double sample) {
  const double r = std::round(sample);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, kMaxSample));
}

std::vector<std::uint8_t> save_pnm(const Image& image) {
  const bool gray = image.order() == ChannelOrder::Gray;
  std::ostringstream header;
  header << (gray ? "P5" : "P6") << '\n' << image.width() << ' ' << image.height() << "\n255\n";
  const std::string head = header.str();

  const std::size_t channels = image.channels();
  std::vector<std::uint8_t> out(head.begin(), head.end());
  out.reserve(head.size() + static_cast<std::size_t>(image.width() * image.height()) * channels);
  for (Eigen::Index y = 0; y < image.height(); ++y) {
    for (Eigen::Index x = 0; x < image.width(); ++x) {
      if (gray) {
        out.push_back(quantize(image.plane(0)(y, x)));
      } else {
        out.push_back(quantize(image.plane(2)(y, x)));
        out.push_back(quantize(image.plane(1)(y, x)));
        out.push_back(quantize(image.plane(0)(y, x)));
      }
    }
  }
  return out;
}

Image read_pnm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedHeader("cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return load_pnm(bytes);
}

void write_pnm_file(const std::string& path, const Image& image) {
  const auto bytes = save_pnm(image);
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::ios_base::failure("cannot write '" + path + "'");
}

Plane to_gray(const Image& image) {
  if (image.order() == ChannelOrder::Gray) return image.plane(0);
  const Plane& b = image.plane(0);
  const Plane& g = image.plane(1);
  const Plane& r = image.plane(2);
  const Plane gray = 0.299 * r + 0.587 * g + 0.114 * b;
  // Rounding may push the convex combination one ulp past its inputs.
  return gray.cwiseMax(b.min(g).min(r)).cwiseMin(b.max(g).max(r));
}

std::int64_t Histogram::total() const {
  std::int64_t sum = 0;
  for (auto b : bins) sum += b;
  return sum;
}

std::size_t bin_of(double sample, std::size_t bin_count) {
  const double idx = std::floor(sample * static_cast<double>(bin_count) / 256.0);
  if (idx <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(idx), bin_count - 1);
}

Histogram histogram(const Plane& plane, std::size_t bin_count) {
  if (bin_count == 0) throw InvalidConfig("histogram needs at least one bin");
  Histogram hist{std::vector<std::int64_t>(bin_count, 0)};
  const double* d = plane.data();
  for (Eigen::Index i = 0; i < plane.size(); ++i) ++hist.bins[bin_of(d[i], bin_count)];
  return hist;
}

Pdf normalize(const Histogram& hist) {
  const auto total = static_cast<double>(hist.total());
  Pdf pdf{std::vector<double>(hist.bin_count(), 0.0)};
  if (total == 0.0) return pdf;
  for (std::size_t i = 0; i < hist.bin_count(); ++i)
    pdf.probs[i] = static_cast<double>(hist.bins[i]) / total;
  return pdf;
}

std::string histogram_csv(const Histogram& hist) {
  std::string out = "bin,count\n";
  for (std::size_t i = 0; i < hist.bin_count(); ++i)
    out += std::to_string(i) + ',' + std::to_string(hist.bins[i]) + '\n';
  return out;
}

Eigen::Index mirror_index(Eigen::Index i, Eigen::Index n) {
  if (n == 1) return 0;
  const Eigen::Index period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

Plane window_at(const Plane& plane, Eigen::Index x, Eigen::Index y, Eigen::Index half) {
  const Eigen::Index side = 2 * half + 1;
  Plane patch(side, side);
  for (Eigen::Index dy = -half; dy <= half; ++dy) {
    const Eigen::Index sy = mirror_index(y + dy, plane.rows());
    for (Eigen::Index dx = -half; dx <= half; ++dx)
      patch(dy + half, dx + half) = plane(sy, mirror_index(x + dx, plane.cols()));
  }
  return patch;
}

Plane mirror_pad(const Plane& plane, Eigen::Index pad) {
  const Eigen::Index h = plane.rows();
  const Eigen::Index w = plane.cols();
  Plane out(h + 2 * pad, w + 2 * pad);
  std::vector<Eigen::Index> cols(static_cast<std::size_t>(w + 2 * pad));
  for (Eigen::Index x = 0; x < w + 2 * pad; ++x)
    cols[static_cast<std::size_t>(x)] = mirror_index(x - pad, w);
  for (Eigen::Index y = 0; y < h + 2 * pad; ++y) {
    const Eigen::Index sy = mirror_index(y - pad, h);
    for (Eigen::Index x = 0; x < w + 2 * pad; ++x)
      out(y, x) = plane(sy, cols[static_cast<std::size_t>(x)]);
  }
  return out;
}

}  // namespace avdsprep
