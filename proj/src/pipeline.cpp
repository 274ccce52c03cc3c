#include "avdsprep/pipeline.hpp"

#include <algorithm>

namespace avdsprep {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Fuzzy: return "fuzzy";
    case Stage::Diffusion: return "diffusion";
    case Stage::Avds: return "avds";
  }
  return "unknown";
}

std::string_view to_string(ChannelPolicy policy) {
  return policy == ChannelPolicy::Grayscale ? "gray" : "per-channel";
}

ChannelPolicy parse_channel_policy(std::string_view text) {
  if (text == "gray" || text == "grayscale") return ChannelPolicy::Grayscale;
  if (text == "per-channel" || text == "per_channel") return ChannelPolicy::PerChannel;
  throw InvalidConfig("unknown channel policy '" + std::string(text) + "'");
}

void PipelineConfig::validate() const {
  if (stages.empty()) throw EmptyPipeline("at least one pipeline stage must be enabled");
  for (std::size_t i = 1; i < stages.size(); ++i)
    if (static_cast<int>(stages[i]) <= static_cast<int>(stages[i - 1]))
      throw InvalidConfig("pipeline stages must keep the order fuzzy, diffusion, avds");
  fuzzy.validate();
  diffusion.validate();
  avds.validate();
}

bool PipelineConfig::enabled(Stage stage) const {
  return std::find(stages.begin(), stages.end(), stage) != stages.end();
}

Image working_image(const Image& image, ChannelPolicy policy) {
  if (policy == ChannelPolicy::Grayscale) return Image(to_gray(image));
  return image;
}

std::map<std::string, std::string> stage_params(Stage stage, const PipelineConfig& config) {
  std::map<std::string, std::string> p;
  p["channels"] = std::string(to_string(config.channel_policy));
  switch (stage) {
    case Stage::Fuzzy:
      p["half"] = std::to_string(config.fuzzy.half);
      p["threshold"] = config.fuzzy.fixed_threshold ? format_number(*config.fuzzy.fixed_threshold)
                                                    : "auto";
      p["threshold_scale"] = format_number(config.fuzzy.threshold_scale);
      p["impulse_guard"] = config.fuzzy.impulse_guard ? "true" : "false";
      break;
    case Stage::Diffusion:
      p["lambda"] = format_number(config.diffusion.lambda);
      p["c"] = format_number(config.diffusion.c);
      p["sigma"] = format_number(config.diffusion.sigma);
      p["dt"] = format_number(config.diffusion.dt);
      p["steps"] = std::to_string(config.diffusion.steps);
      break;
    case Stage::Avds:
      p["k"] = std::to_string(config.avds.k);
      p["omega"] = format_number(config.avds.omega);
      p["bd_bins"] = std::to_string(config.avds.bd_bins);
      p["mode"] = config.avds_fixed ? std::string(to_string(*config.avds_fixed)) : "adaptive";
      break;
  }
  return p;
}

StageTrace run_pipeline(const Image& image, const PipelineConfig& config) {
  config.validate();
  for (const auto& p : image.planes()) require_valid_plane(p);

  const Image original = working_image(image, config.channel_policy);
  StageTrace trace;
  Image current = original;
  for (Stage stage : config.stages) {
    StageResult result;
    result.stage = stage;
    switch (stage) {
      case Stage::Fuzzy:
        result.output = map_planes(current, [&](const Plane& p) { return fuzzy_filter(p, config.fuzzy); });
        break;
      case Stage::Diffusion:
        result.output = map_planes(current, [&](const Plane& p) { return diffuse(p, config.diffusion); });
        break;
      case Stage::Avds: {
        DistanceKind kind;
        if (config.avds_fixed) {
          kind = *config.avds_fixed;
        } else {
          // One decision per image, made on the grayscale projection.
          AvdsOutcome outcome = avds_adaptive(to_gray(current), config.avds);
          kind = outcome.chosen;
          result.chosen = kind;
          result.contrasts = outcome.contrasts;
          if (current.channels() == 1) {
            result.output = Image(std::move(outcome.chosen_output));
            break;
          }
        }
        result.output = map_planes(current, [&](const Plane& p) { return avds_single(p, kind, config.avds); });
        break;
      }
    }
    const std::string label(to_string(stage));
    auto params = stage_params(stage, config);
    if (result.chosen) params["chosen"] = std::string(to_string(*result.chosen));
    result.vs_input = evaluate(label, original, result.output, params);
    result.vs_previous = evaluate(label, current, result.output, params);
    current = result.output;
    trace.push_back(std::move(result));
  }
  return trace;
}

}  // namespace avdsprep
