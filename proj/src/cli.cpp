#include "avdsprep/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

namespace avdsprep::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Failure categories mapped onto exit codes at the top of run().
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WriteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Command-line values; each is applied only if the flag was given.
struct Flags {
  std::string config_path;
  std::string avds_mode;
  int k = 0;
  double omega = 0.0;
  std::string channels;
  bool skip_fuzzy = false;
  bool skip_diffusion = false;
  int fuzzy_half = 0;
  std::string threshold;
  double lambda = 0.0;
  int steps = 0;
  double dt = 0.0;
  double sigma = 0.0;
  int bd_bins = 0;
  int clahe_tiles = 0;
  double clip_limit = 0.0;
  unsigned jobs = 0;

  std::vector<std::pair<std::string, CLI::Option*>> given;

  [[nodiscard]] bool has(const std::string& name) const {
    // The same flag exists on every subcommand; only one is ever parsed.
    for (const auto& [n, opt] : given)
      if (n == name && opt->count() > 0) return true;
    return false;
  }
};

void add_common_options(CLI::App& cmd, Flags& f) {
  const auto add = [&](const std::string& name, CLI::Option* opt) { f.given.emplace_back(name, opt); };
  add("config", cmd.add_option("--config", f.config_path, "Flat JSON settings file"));
  add("avds-mode", cmd.add_option("--avds-mode", f.avds_mode,
                                  "adaptive|euclidean|bhattacharya|manhattan|hamming"));
  add("k", cmd.add_option("--k", f.k, "AVDS sub-window side"));
  add("omega", cmd.add_option("--omega", f.omega, "AVDS inverse-distance exponent"));
  add("channels", cmd.add_option("--channels", f.channels, "gray|per-channel"));
  add("skip-fuzzy", cmd.add_flag("--skip-fuzzy", f.skip_fuzzy, "Disable the fuzzy noise filter"));
  add("skip-diffusion",
      cmd.add_flag("--skip-diffusion", f.skip_diffusion, "Disable nonlinear diffusion"));
  add("fuzzy-half", cmd.add_option("--fuzzy-half", f.fuzzy_half, "Fuzzy window half-size"));
  add("threshold", cmd.add_option("--threshold", f.threshold, "Fuzzy threshold: auto or a value"));
  add("lambda", cmd.add_option("--lambda", f.lambda, "Diffusion contrast parameter"));
  add("steps", cmd.add_option("--steps", f.steps, "Diffusion steps"));
  add("dt", cmd.add_option("--dt", f.dt, "Diffusion time step"));
  add("sigma", cmd.add_option("--sigma", f.sigma, "Gradient pre-smoothing scale"));
  add("bd-bins", cmd.add_option("--bd-bins", f.bd_bins, "Bhattacharya histogram bins"));
  add("clahe-tiles", cmd.add_option("--clahe-tiles", f.clahe_tiles, "CLAHE tiles per axis"));
  add("clip-limit", cmd.add_option("--clip-limit", f.clip_limit, "CLAHE clip limit"));
  add("jobs", cmd.add_option("--jobs", f.jobs, "Worker threads (AVDSPREP_JOBS overrides)"));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void set_avds_mode(const std::string& mode, PipelineConfig& p) {
  if (mode == "adaptive")
    p.avds_fixed.reset();
  else
    p.avds_fixed = parse_distance_kind(mode);
}

void set_threshold(const std::string& value, FuzzyConfig& f) {
  if (value == "auto") {
    f.fixed_threshold.reset();
    return;
  }
  try {
    std::size_t used = 0;
    const double t = std::stod(value, &used);
    if (used != value.size()) throw InvalidConfig("bad threshold '" + value + "'");
    f.fixed_threshold = t;
  } catch (const std::logic_error&) {
    throw InvalidConfig("bad threshold '" + value + "'");
  }
}

unsigned default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

Settings resolve_settings(const Flags& f) {
  Settings s;
  s.jobs = default_jobs();
  if (f.has("config")) apply_config_json(read_text(f.config_path), s);

  auto& p = s.pipeline;
  if (f.has("avds-mode")) set_avds_mode(f.avds_mode, p);
  if (f.has("k")) p.avds.k = f.k;
  if (f.has("omega")) p.avds.omega = f.omega;
  if (f.has("bd-bins")) p.avds.bd_bins = f.bd_bins;
  if (f.has("channels")) p.channel_policy = parse_channel_policy(f.channels);
  if (f.has("fuzzy-half")) p.fuzzy.half = f.fuzzy_half;
  if (f.has("threshold")) set_threshold(f.threshold, p.fuzzy);
  if (f.has("lambda")) p.diffusion.lambda = f.lambda;
  if (f.has("steps")) p.diffusion.steps = f.steps;
  if (f.has("dt")) p.diffusion.dt = f.dt;
  if (f.has("sigma")) p.diffusion.sigma = f.sigma;
  if (f.has("clahe-tiles")) s.clahe.tiles_x = s.clahe.tiles_y = f.clahe_tiles;
  if (f.has("clip-limit")) s.clahe.clip_limit = f.clip_limit;
  if (f.has("jobs")) s.jobs = f.jobs;
  if (f.skip_fuzzy || f.skip_diffusion) {
    std::erase_if(p.stages, [&](Stage st) {
      return (f.skip_fuzzy && st == Stage::Fuzzy) || (f.skip_diffusion && st == Stage::Diffusion);
    });
  }
  if (const char* env = std::getenv("AVDSPREP_JOBS"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const long n = std::stol(env, &used);
      if (used != std::string(env).size() || n < 1) throw std::invalid_argument(env);
      s.jobs = static_cast<unsigned>(n);
    } catch (const std::logic_error&) {
      throw UsageError(std::string("AVDSPREP_JOBS must be a positive integer, got '") + env + "'");
    }
  }
  if (s.jobs == 0) throw UsageError("--jobs must be >= 1");
  p.validate();
  s.clahe.validate();
  return s;
}

Image load_input(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError("input '" + path.string() + "' is not a readable file");
  try {
    return read_pnm_file(path.string());
  } catch (const Error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw WriteError("cannot create output directory '" + dir.string() + "'");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw WriteError("cannot write '" + path.string() + "'");
}

void write_image(const fs::path& path, const Image& image) {
  try {
    write_pnm_file(path.string(), image);
  } catch (const std::exception&) {
    throw WriteError("cannot write '" + path.string() + "'");
  }
}

json report_json(const QualityReport& r) { return json::parse(to_json(r)); }

json contrasts_json(const std::array<double, 4>& contrasts) {
  json j = json::object();
  for (auto kind : kAllDistanceKinds)
    j[std::string(to_string(kind))] = contrasts[static_cast<std::size_t>(kind)];
  return j;
}

json manifest_base(const std::string& command, const Settings& s, const fs::path& out_dir) {
  json m;
  m["tool"] = "avdsprep";
  m["version"] = kToolVersion;
  m["command"] = command;
  m["output_dir"] = out_dir.string();
  m["config"] = json::parse(settings_json(s));
  m["inputs"] = json::array();
  m["files"] = json::array();
  return m;
}

void add_file(json& manifest, const fs::path& file, const fs::path& input, const std::string& stage) {
  manifest["files"].push_back(
      {{"path", file.filename().string()}, {"input", input.string()}, {"stage", stage}});
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
// (lowest index) is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---- enhance ---------------------------------------------------------------

int cmd_enhance(const fs::path& input, const fs::path& out_dir, const Settings& s, std::ostream& out) {
  const Image image = load_input(input);
  StageTrace trace;
  try {
    trace = run_pipeline(image, s.pipeline);
  } catch (const InvalidImage& e) {
    throw InputError(input.string() + ": " + e.what());
  }
  ensure_directory(out_dir);

  json manifest = manifest_base("enhance", s, out_dir);
  manifest["inputs"].push_back(input.string());
  const std::string stem = input.stem().string();

  std::string csv = std::string("comparison,") + kReportCsvHeader + "\n";
  json stages = json::array();
  for (const auto& r : trace) {
    const std::string stage(to_string(r.stage));
    const fs::path file = out_dir / (stem + "." + stage + ".pnm");
    write_image(file, r.output);
    add_file(manifest, file, input, stage);
    csv += "vs_input," + to_csv_row(r.vs_input) + "\n";
    csv += "vs_previous," + to_csv_row(r.vs_previous) + "\n";

    json st{{"stage", stage}, {"vs_input", report_json(r.vs_input)},
            {"vs_previous", report_json(r.vs_previous)}};
    if (r.chosen) {
      st["chosen"] = std::string(to_string(*r.chosen));
      st["contrasts"] = contrasts_json(*r.contrasts);
      out << "chosen=" << to_string(*r.chosen)
          << " contrast=" << format_number((*r.contrasts)[static_cast<std::size_t>(*r.chosen)]) << "\n";
    }
    stages.push_back(std::move(st));
  }
  write_text(out_dir / "report.csv", csv);
  add_file(manifest, out_dir / "report.csv", input, "report");
  manifest["images"] = json::array({{{"input", input.string()}, {"stages", stages}}});
  add_file(manifest, out_dir / "manifest.json", input, "manifest");
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return kOk;
}

// ---- compare ---------------------------------------------------------------

// Fuzzy and diffusion stages as configured, applied to the working image.
Image prior_stages(const Image& working, const PipelineConfig& p) {
  Image current = working;
  if (p.enabled(Stage::Fuzzy))
    current = map_planes(current, [&](const Plane& pl) { return fuzzy_filter(pl, p.fuzzy); });
  if (p.enabled(Stage::Diffusion))
    current = map_planes(current, [&](const Plane& pl) { return diffuse(pl, p.diffusion); });
  return current;
}

// The four AVDS variants of an image, each channel filtered independently.
std::array<Image, 4> avds_variants(const Image& prior, const AvdsConfig& config) {
  std::array<std::vector<Plane>, 4> planes;
  for (const auto& pl : prior.planes()) {
    AvdsOutcome o = avds_adaptive(pl, config);
    for (std::size_t i = 0; i < 4; ++i) planes[i].push_back(std::move(o.outputs[i]));
  }
  return {Image(std::move(planes[0]), prior.order()), Image(std::move(planes[1]), prior.order()),
          Image(std::move(planes[2]), prior.order()), Image(std::move(planes[3]), prior.order())};
}

std::vector<QualityReport> compare_image(const Image& image, const Settings& s) {
  const auto& p = s.pipeline;
  const Image working = working_image(image, p.channel_policy);
  std::vector<QualityReport> rows;
  const std::string channels(to_string(p.channel_policy));

  rows.push_back(evaluate(kCompareMethods[0], working, map_planes(working, hist_equalize),
                          {{"channels", channels}}));
  rows.push_back(evaluate(kCompareMethods[1], working,
                          map_planes(working, [&](const Plane& pl) { return clahe(pl, s.clahe); }),
                          {{"channels", channels},
                           {"tiles", std::to_string(s.clahe.tiles_x) + "x" + std::to_string(s.clahe.tiles_y)},
                           {"clip_limit", format_number(s.clahe.clip_limit)}}));

  auto avds_params = stage_params(Stage::Avds, p);
  avds_params.erase("mode");
  std::string prior_label;
  for (Stage st : p.stages)
    if (st != Stage::Avds) prior_label += (prior_label.empty() ? "" : "+") + std::string(to_string(st));
  avds_params["prior"] = prior_label.empty() ? "none" : prior_label;

  const auto variants = avds_variants(prior_stages(working, p), p.avds);
  for (std::size_t i = 0; i < 4; ++i)
    rows.push_back(evaluate(kCompareMethods[2 + i], working, variants[i], avds_params));
  return rows;
}

bool is_pnm_name(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

std::string compare_row(const QualityReport& r, const std::string& image) {
  return csv_field(r.method) + ',' + csv_field(image) + ',' + format_number(r.mse) + ',' +
         format_number(r.rmse) + ',' + format_number(r.psnr_db) + ',' + format_number(r.contrast) + ',' +
         format_number(r.entropy_bits) + ',' + csv_field(format_params(r.params));
}

int cmd_compare(const fs::path& in_dir, const fs::path& out_dir, const Settings& s, std::ostream& err) {
  std::error_code ec;
  if (!fs::is_directory(in_dir, ec)) throw InputError("input '" + in_dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(in_dir, ec))
    if (entry.is_regular_file() && is_pnm_name(entry.path())) files.push_back(entry.path());
  if (ec) throw InputError("cannot list '" + in_dir.string() + "'");
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  ensure_directory(out_dir);

  struct Result {
    bool ok = false;
    std::string error;
    std::vector<QualityReport> rows;
  };
  std::vector<Result> results(files.size());
  parallel_for(files.size(), s.jobs, [&](std::size_t i) {
    try {
      const Image image = read_pnm_file(files[i].string());
      for (const auto& pl : image.planes()) require_valid_plane(pl);
      results[i].rows = compare_image(image, s);
      results[i].ok = true;
    } catch (const Error& e) {
      results[i].error = e.what();
    }
  });

  json manifest = manifest_base("compare", s, out_dir);
  json skipped = json::array();
  std::string csv = "method,image,mse,rmse,psnr_db,contrast,entropy_bits,params\n";
  std::array<double, 6> sum_mse{}, sum_contrast{}, sum_entropy{};
  std::size_t processed = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string name = files[i].filename().string();
    if (!results[i].ok) {
      err << "warning: skipping " << name << ": " << results[i].error << "\n";
      skipped.push_back({{"input", files[i].string()}, {"error", results[i].error}});
      continue;
    }
    manifest["inputs"].push_back(files[i].string());
    ++processed;
    for (std::size_t m = 0; m < results[i].rows.size(); ++m) {
      const auto& r = results[i].rows[m];
      csv += compare_row(r, name) + "\n";
      sum_mse[m] += r.mse;
      sum_contrast[m] += r.contrast;
      sum_entropy[m] += r.entropy_bits;
    }
  }
  if (processed > 0) {
    const auto n = static_cast<double>(processed);
    for (std::size_t m = 0; m < kCompareMethods.size(); ++m) {
      const auto mean = QualityReport::from_mse(kCompareMethods[m], sum_mse[m] / n, sum_contrast[m] / n,
                                                sum_entropy[m] / n,
                                                {{"images", std::to_string(processed)}});
      csv += compare_row(mean, "mean") + "\n";
    }
  }
  write_text(out_dir / "compare.csv", csv);
  add_file(manifest, out_dir / "compare.csv", in_dir, "compare");
  manifest["skipped"] = skipped;
  manifest["skipped_count"] = skipped.size();
  add_file(manifest, out_dir / "manifest.json", in_dir, "manifest");
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return kOk;
}

// ---- hist ------------------------------------------------------------------

int cmd_hist(const fs::path& input, const fs::path& out_dir, const Settings& s) {
  const Image image = load_input(input);
  for (const auto& pl : image.planes()) {
    if (!is_valid_plane(pl)) throw InputError(input.string() + ": samples out of range");
  }
  const Image working = working_image(image, s.pipeline.channel_policy);
  const auto variants = avds_variants(prior_stages(working, s.pipeline), s.pipeline.avds);
  ensure_directory(out_dir);

  json manifest = manifest_base("hist", s, out_dir);
  manifest["inputs"].push_back(input.string());
  const std::string stem = input.stem().string();
  for (auto kind : kAllDistanceKinds) {
    const Image& v = variants[static_cast<std::size_t>(kind)];
    const fs::path file = out_dir / (stem + "." + std::string(to_string(kind)) + ".hist.csv");
    write_text(file, histogram_csv(histogram(to_gray(v), 256)));
    add_file(manifest, file, input, "avds-" + std::string(to_string(kind)));
  }
  add_file(manifest, out_dir / "manifest.json", input, "manifest");
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return kOk;
}

}  // namespace

void apply_config_json(const std::string& json_text, Settings& s) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidConfig("config must be a JSON object");

  auto& p = s.pipeline;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "fuzzy_half") p.fuzzy.half = v.get<int>();
      else if (key == "fuzzy_threshold") set_threshold(v.is_string() ? v.get<std::string>() : v.dump(), p.fuzzy);
      else if (key == "fuzzy_threshold_scale") p.fuzzy.threshold_scale = v.get<double>();
      else if (key == "fuzzy_impulse_guard") p.fuzzy.impulse_guard = v.get<bool>();
      else if (key == "diffusion_lambda") p.diffusion.lambda = v.get<double>();
      else if (key == "diffusion_c") p.diffusion.c = v.get<double>();
      else if (key == "diffusion_sigma") p.diffusion.sigma = v.get<double>();
      else if (key == "diffusion_dt") p.diffusion.dt = v.get<double>();
      else if (key == "diffusion_steps") p.diffusion.steps = v.get<int>();
      else if (key == "avds_k") p.avds.k = v.get<int>();
      else if (key == "avds_omega") p.avds.omega = v.get<double>();
      else if (key == "avds_bd_bins") p.avds.bd_bins = v.get<int>();
      else if (key == "avds_epsilon") p.avds.epsilon = v.get<double>();
      else if (key == "avds_mode") set_avds_mode(v.get<std::string>(), p);
      else if (key == "channel_policy") p.channel_policy = parse_channel_policy(v.get<std::string>());
      else if (key == "stages") {
        p.stages.clear();
        for (const auto& st : v) {
          const auto name = st.get<std::string>();
          if (name == "fuzzy") p.stages.push_back(Stage::Fuzzy);
          else if (name == "diffusion") p.stages.push_back(Stage::Diffusion);
          else if (name == "avds") p.stages.push_back(Stage::Avds);
          else throw InvalidConfig("unknown stage '" + name + "'");
        }
      }
      else if (key == "clahe_tiles_x") s.clahe.tiles_x = v.get<int>();
      else if (key == "clahe_tiles_y") s.clahe.tiles_y = v.get<int>();
      else if (key == "clahe_clip_limit") s.clahe.clip_limit = v.get<double>();
      else if (key == "jobs") s.jobs = v.get<unsigned>();
      else throw InvalidConfig("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("bad config value: ") + e.what());
  }
}

std::string settings_json(const Settings& s) {
  const auto& p = s.pipeline;
  json j;
  j["fuzzy_half"] = p.fuzzy.half;
  if (p.fuzzy.fixed_threshold)
    j["fuzzy_threshold"] = *p.fuzzy.fixed_threshold;
  else
    j["fuzzy_threshold"] = "auto";
  j["fuzzy_threshold_scale"] = p.fuzzy.threshold_scale;
  j["fuzzy_impulse_guard"] = p.fuzzy.impulse_guard;
  j["diffusion_lambda"] = p.diffusion.lambda;
  j["diffusion_c"] = p.diffusion.c;
  j["diffusion_sigma"] = p.diffusion.sigma;
  j["diffusion_dt"] = p.diffusion.dt;
  j["diffusion_steps"] = p.diffusion.steps;
  j["avds_k"] = p.avds.k;
  j["avds_omega"] = p.avds.omega;
  j["avds_bd_bins"] = p.avds.bd_bins;
  j["avds_epsilon"] = p.avds.epsilon;
  j["avds_mode"] = p.avds_fixed ? std::string(to_string(*p.avds_fixed)) : "adaptive";
  j["channel_policy"] = std::string(to_string(p.channel_policy));
  j["stages"] = json::array();
  for (Stage st : p.stages) j["stages"].push_back(std::string(to_string(st)));
  j["clahe_tiles_x"] = s.clahe.tiles_x;
  j["clahe_tiles_y"] = s.clahe.tiles_y;
  j["clahe_clip_limit"] = s.clahe.clip_limit;
  j["jobs"] = s.jobs;
  return j.dump();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Retinal image preprocessing: fuzzy denoising, nonlinear diffusion, AVDS contrast filter",
               "avdsprep"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string input;
  std::string output;
  Flags flags;
  CLI::App* enhance = app.add_subcommand("enhance", "Run the preprocessing pipeline on one image");
  CLI::App* compare = app.add_subcommand("compare", "Compare HE, CLAHE and the four AVDS variants");
  CLI::App* hist = app.add_subcommand("hist", "Export histograms of the four AVDS variants");
  for (CLI::App* cmd : {enhance, compare, hist}) {
    cmd->add_option("input", input, cmd == compare ? "Directory of PNM images" : "Input PNM image")
        ->required();
    cmd->add_option("-o,--output", output, "Output directory")->required();
    add_common_options(*cmd, flags);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Settings settings;
    try {
      settings = resolve_settings(flags);
    } catch (const InvalidConfig& e) {
      throw UsageError(e.what());
    }
    if (enhance->parsed()) return cmd_enhance(input, output, settings, out);
    if (compare->parsed()) return cmd_compare(input, output, settings, err);
    return cmd_hist(input, output, settings);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const WriteError& e) {
    err << "error: " << e.what() << "\n";
    return kWriteFailed;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kWriteFailed;
  } catch (const std::exception& e) {
    // Remaining failures come from the image data.
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace avdsprep::cli
