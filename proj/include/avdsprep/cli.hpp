#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "avdsprep/pipeline.hpp"

namespace avdsprep::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Process exit codes. Nothing else escapes run().
enum ExitCode : int { kOk = 0, kUsage = 2, kBadInput = 3, kWriteFailed = 4 };

/// Runs `avdsprep <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Everything a command needs besides paths.
struct Settings {
  PipelineConfig pipeline;
  ClaheConfig clahe;
  unsigned jobs = 1;
};

/// Applies a flat JSON config object (keys like "avds_k", "diffusion_steps")
/// on top of `settings`. Throws InvalidConfig on unknown keys or bad values.
void apply_config_json(const std::string& json_text, Settings& settings);

/// Flat JSON object of the resolved settings, same keys as apply_config_json.
[[nodiscard]] std::string settings_json(const Settings& settings);

inline constexpr std::array<const char*, 6> kCompareMethods = {
    "HE", "CLAHE", "AVDS-Euclidean", "AVDS-Bhattacharya", "AVDS-Manhattan", "AVDS-Hamming"};

}  // namespace avdsprep::cli
