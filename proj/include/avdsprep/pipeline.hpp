#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "avdsprep/avds.hpp"
#include "avdsprep/baselines.hpp"
#include "avdsprep/diffusion.hpp"
#include "avdsprep/fuzzy.hpp"
#include "avdsprep/quality.hpp"

namespace avdsprep {

enum class Stage { Fuzzy = 0, Diffusion = 1, Avds = 2 };

[[nodiscard]] std::string_view to_string(Stage stage);  // "fuzzy", "diffusion", "avds"

enum class ChannelPolicy { Grayscale, PerChannel };

[[nodiscard]] std::string_view to_string(ChannelPolicy policy);  // "gray", "per-channel"
[[nodiscard]] ChannelPolicy parse_channel_policy(std::string_view text);

struct PipelineConfig {
  FuzzyConfig fuzzy;
  DiffusionConfig diffusion;
  AvdsConfig avds;
  /// Empty means adaptive selection.
  std::optional<DistanceKind> avds_fixed;
  ChannelPolicy channel_policy = ChannelPolicy::Grayscale;
  std::vector<Stage> stages = {Stage::Fuzzy, Stage::Diffusion, Stage::Avds};

  /// Checks every sub-config plus stage ordering (strictly increasing, non-empty).
  void validate() const;
  [[nodiscard]] bool enabled(Stage stage) const;
};

class EmptyPipeline : public InvalidConfig {
 public:
  using InvalidConfig::InvalidConfig;
};

struct StageResult {
  Stage stage = Stage::Fuzzy;
  Image output;
  QualityReport vs_input;     ///< against the (channel-policy) original
  QualityReport vs_previous;  ///< against this stage's input
  std::optional<DistanceKind> chosen;             ///< adaptive AVDS only
  std::optional<std::array<double, 4>> contrasts;  ///< adaptive AVDS only
};

using StageTrace = std::vector<StageResult>;

/// The image the pipeline actually processes: to_gray for Grayscale, the
/// input itself for PerChannel.
[[nodiscard]] Image working_image(const Image& image, ChannelPolicy policy);

/// Applies `fn` to every plane of `image`.
template <typename Fn>
[[nodiscard]] Image map_planes(const Image& image, Fn&& fn) {
  std::vector<Plane> planes;
  planes.reserve(image.channels());
  for (const auto& p : image.planes()) planes.push_back(fn(p));
  return Image(std::move(planes), image.order());
}

/// Stage parameters as report labels.
[[nodiscard]] std::map<std::string, std::string> stage_params(Stage stage, const PipelineConfig& config);

[[nodiscard]] StageTrace run_pipeline(const Image& image, const PipelineConfig& config = {});

}  // namespace avdsprep
