#include "avdsprep/avds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "avdsprep/quality.hpp"

namespace avdsprep {

namespace {

constexpr double kPdfFloor = 1e-6;

double bhattacharyya(std::span<const double> patch, double center_value, int bins,
                     std::vector<double>& scratch) {
  const auto nbins = static_cast<std::size_t>(bins);
  scratch.assign(nbins, 0.0);
  for (double s : patch) scratch[bin_of(s, nbins)] += 1.0;

  const auto n = static_cast<double>(patch.size());
  double p_total = 0.0;
  for (double& p : scratch) {
    p = std::max(p / n, kPdfFloor);
    p_total += p;
  }
  // Reference is a delta at the center's bin, floored the same way.
  const std::size_t ref_bin = bin_of(center_value, nbins);
  const double q_total = 1.0 + kPdfFloor * static_cast<double>(nbins - 1);

  double coefficient = 0.0;
  for (std::size_t b = 0; b < nbins; ++b) {
    const double q = (b == ref_bin ? 1.0 : kPdfFloor) / q_total;
    coefficient += std::sqrt(scratch[b] / p_total * q);
  }
  return std::max(0.0, -std::log(coefficient));
}

// Shared per-pixel evaluation so single-kind and adaptive runs produce
// bit-identical outputs.
class AvdsKernel {
 public:
  AvdsKernel(const Plane& plane, const AvdsConfig& config)
      : config_(config),
        k_(config.k),
        padded_(mirror_pad(plane, config.k - 1)),
        patch_(static_cast<std::size_t>(config.k * config.k)) {
    for (std::size_t w = 0; w < kSubWindowCount; ++w)
      origins_[w] = subwindow_origin(static_cast<SubWindow>(w), k_);
  }

  template <std::size_t N>
  void evaluate(const Plane& plane, Eigen::Index y, Eigen::Index x,
                const std::array<DistanceKind, N>& kinds, std::array<double, N>& out) {
    const double center = plane(y, x);
    std::array<double, kSubWindowCount> means{};
    std::array<std::array<double, kSubWindowCount>, N> dists{};

    for (std::size_t w = 0; w < kSubWindowCount; ++w) {
      const Eigen::Index top = y + (k_ - 1) + origins_[w].dy;
      const Eigen::Index left = x + (k_ - 1) + origins_[w].dx;
      std::size_t i = 0;
      double offset_sum = 0.0;
      for (Eigen::Index r = 0; r < k_; ++r) {
        const double* row = padded_.data() + (top + r) * padded_.cols() + left;
        for (Eigen::Index c = 0; c < k_; ++c) {
          patch_[i++] = row[c];
          offset_sum += row[c] - center;
        }
      }
      means[w] = center + offset_sum / static_cast<double>(patch_.size());
      for (std::size_t kind = 0; kind < N; ++kind)
        dists[kind][w] = distance_of(kinds[kind], center);
    }
    for (std::size_t kind = 0; kind < N; ++kind)
      out[kind] = combine_means(means, dists[kind], config_.omega, config_.epsilon);
  }

 private:
  double distance_of(DistanceKind kind, double center) {
    if (kind == DistanceKind::Bhattacharya)
      return bhattacharyya(patch_, center, config_.bd_bins, bins_);
    return distance(patch_, center, kind, config_);
  }

  AvdsConfig config_;
  Eigen::Index k_;
  Plane padded_;
  std::vector<double> patch_;
  std::vector<double> bins_;
  std::array<Offset, kSubWindowCount> origins_{};
};

}  // namespace

std::string_view to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::Euclidean: return "euclidean";
    case DistanceKind::Bhattacharya: return "bhattacharya";
    case DistanceKind::Manhattan: return "manhattan";
    case DistanceKind::Hamming: return "hamming";
  }
  return "unknown";
}

std::string_view display_name(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::Euclidean: return "Euclidean";
    case DistanceKind::Bhattacharya: return "Bhattacharya";
    case DistanceKind::Manhattan: return "Manhattan";
    case DistanceKind::Hamming: return "Hamming";
  }
  return "Unknown";
}

DistanceKind parse_distance_kind(std::string_view text) {
  for (auto kind : kAllDistanceKinds)
    if (text == to_string(kind) || text == display_name(kind)) return kind;
  throw InvalidConfig("unknown distance kind '" + std::string(text) + "'");
}

void AvdsConfig::validate() const {
  if (k < 2) throw InvalidConfig("AVDS sub-window side k must be >= 2");
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw InvalidConfig("AVDS omega must be finite and >= 0");
  if (bd_bins < 2) throw InvalidConfig("AVDS Bhattacharya bin count must be >= 2");
  if (!(epsilon > 0.0)) throw InvalidConfig("AVDS epsilon must be > 0");
}

Offset subwindow_origin(SubWindow which, int k) {
  const int far = -(k - 1);
  switch (which) {
    case SubWindow::NW: return {far, far};
    case SubWindow::NE: return {far, 0};
    case SubWindow::SW: return {0, far};
    case SubWindow::SE: return {0, 0};
    case SubWindow::C: return {-((k - 1) / 2), -((k - 1) / 2)};
  }
  return {0, 0};
}

SubWindowSet subwindows(const Plane& plane, Eigen::Index x, Eigen::Index y, int k) {
  if (k < 2) throw InvalidConfig("sub-window side k must be >= 2");
  SubWindowSet set;
  set.center_value = plane(y, x);
  const Plane mask = window_at(plane, x, y, k - 1);
  for (std::size_t w = 0; w < kSubWindowCount; ++w) {
    const Offset o = subwindow_origin(static_cast<SubWindow>(w), k);
    set.patches[w] = mask.block(o.dy + k - 1, o.dx + k - 1, k, k);
  }
  return set;
}

double distance(std::span<const double> patch, double center_value, DistanceKind kind,
                const AvdsConfig& config) {
  switch (kind) {
    case DistanceKind::Euclidean: {
      double acc = 0.0;
      for (double s : patch) acc += (s - center_value) * (s - center_value);
      return std::sqrt(acc);
    }
    case DistanceKind::Manhattan: {
      double acc = 0.0;
      for (double s : patch) acc += std::abs(s - center_value);
      return acc;
    }
    case DistanceKind::Hamming: {
      const double ref = std::round(center_value);
      double count = 0.0;
      for (double s : patch)
        if (std::round(s) != ref) count += 1.0;
      return count;
    }
    case DistanceKind::Bhattacharya: {
      std::vector<double> scratch;
      return bhattacharyya(patch, center_value, config.bd_bins, scratch);
    }
  }
  return 0.0;
}

double combine_means(const std::array<double, kSubWindowCount>& means,
                     const std::array<double, kSubWindowCount>& distances, double omega,
                     double epsilon) {
  double lo = means[0];
  double hi = means[0];
  double d_min = distances[0];
  for (std::size_t i = 1; i < kSubWindowCount; ++i) d_min = std::min(d_min, distances[i]);

  double num = 0.0;
  double den = 0.0;
  if (d_min < epsilon) {
    // Limit of the weighted mean as the matching sub-windows' weights diverge.
    bool first = true;
    for (std::size_t i = 0; i < kSubWindowCount; ++i) {
      if (distances[i] >= epsilon) continue;
      if (first) lo = hi = means[i];
      first = false;
      lo = std::min(lo, means[i]);
      hi = std::max(hi, means[i]);
      num += means[i];
      den += 1.0;
    }
  } else {
    // (1/D_i)^w scaled by D_min^w; the ratio is unchanged and cannot overflow.
    for (std::size_t i = 0; i < kSubWindowCount; ++i) {
      const double weight = std::pow(d_min / distances[i], omega);
      lo = std::min(lo, means[i]);
      hi = std::max(hi, means[i]);
      num += means[i] * weight;
      den += weight;
    }
  }
  return std::clamp(num / den, lo, hi);
}

Plane avds_single(const Plane& plane, DistanceKind kind, const AvdsConfig& config) {
  config.validate();
  AvdsKernel kernel(plane, config);
  Plane out(plane.rows(), plane.cols());
  const std::array<DistanceKind, 1> kinds{kind};
  std::array<double, 1> value{};
  for (Eigen::Index y = 0; y < plane.rows(); ++y) {
    for (Eigen::Index x = 0; x < plane.cols(); ++x) {
      kernel.evaluate(plane, y, x, kinds, value);
      out(y, x) = value[0];
    }
  }
  return out;
}

DistanceKind argmax_contrast(const std::array<double, 4>& contrasts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < contrasts.size(); ++i)
    if (contrasts[i] > contrasts[best]) best = i;
  return static_cast<DistanceKind>(best);
}

AvdsOutcome avds_adaptive(const Plane& plane, const AvdsConfig& config) {
  config.validate();
  AvdsOutcome outcome;
  for (auto& o : outcome.outputs) o.resize(plane.rows(), plane.cols());

  // One pass evaluates all four kinds; sub-window gathering and means are shared.
  AvdsKernel kernel(plane, config);
  std::array<double, 4> values{};
  for (Eigen::Index y = 0; y < plane.rows(); ++y) {
    for (Eigen::Index x = 0; x < plane.cols(); ++x) {
      kernel.evaluate(plane, y, x, kAllDistanceKinds, values);
      for (std::size_t i = 0; i < 4; ++i) outcome.outputs[i](y, x) = values[i];
    }
  }
  for (std::size_t i = 0; i < 4; ++i) outcome.contrasts[i] = contrast(outcome.outputs[i]);
  outcome.chosen = argmax_contrast(outcome.contrasts);
  outcome.chosen_output = outcome.output(outcome.chosen);
  return outcome;
}

}  // namespace avdsprep
