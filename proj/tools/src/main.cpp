// Command-line front end for the kernel-approximation pipeline:
//   gen-data    synthesize a Gaussian-mixture dataset or an image stack
//   preprocess  contrast-normalize, sample patches, whiten, unit-normalize
//   fit         fit an IKA or Nystrom feature map and save it
//   eval        Monte-Carlo approximation error of a saved map
//   sweep       method-comparison grid from a config file, CSV + metadata out
//
// Exit codes: 0 success, 2 bad flags or config, 1 runtime failures (I/O
// included). Machine-readable output is one JSON line per command on stdout
// (the sweep also writes its CSV and sidecar to disk); diagnostics go to
// stderr. One master --seed per invocation is split into named streams, so
// e.g. changing --pairs never changes which filters get picked.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ika/dataio.hpp"
#include "ika/errors.hpp"
#include "ika/evaluation.hpp"
#include "ika/feature_map.hpp"
#include "ika/ika.hpp"
#include "ika/nystrom.hpp"
#include "ika/preprocess.hpp"
#include "ika/rng.hpp"
#include "ika/version.hpp"

namespace {

using nlohmann::json;

// Fit-sample rows are materialized as a dense S x d block plus an S x S Gram
// matrix; this cap (~3.2 GB Gram) keeps one flag typo from taking the host
// down. The full-scale S = 15000 configuration fits under it.
constexpr std::size_t kMaxSampleSize = 20000;

// Flag or config problems after CLI11 parsing; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const json& j) { std::cout << j.dump() << "\n"; }

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw ika::IoError(ika::IoError::Kind::OpenFailed, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return std::move(buffer).str();
}

std::string hex64(std::uint64_t v) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(v));
  return buffer;
}

// json serializes NaN as null; route every double through this so the
// sidecar and summaries stay valid JSON even for all-failed sweeps.
json json_number(double v) { return json(v); }

// ---------------------------------------------------------------------------
// gen-data

struct GenDataArgs {
  std::string kind = "mixture";
  std::string out;
  std::uint64_t seed = 0;
  std::size_t count = 1000;
  std::size_t dim = 10;
  std::size_t components = 5;
  std::size_t height = 32, width = 32, channels = 1;
};

void cmd_gen_data(const GenDataArgs& a) {
  if (a.kind == "mixture") {
    if (a.dim == 0 || a.components == 0) {
      throw UsageError("--dim and --components must be positive");
    }
    // Component means and scales are themselves drawn from the seed, so one
    // integer reproduces the whole dataset.
    ika::Rng shape_rng(ika::derive_seed(a.seed, "components"));
    std::vector<ika::MixtureComponent> components(a.components);
    for (auto& component : components) {
      component.mean.resize(a.dim);
      for (auto& v : component.mean) v = 2.0 * shape_rng.normal();
      component.scale = 0.5 + shape_rng.next_double();
    }
    const ika::Matrix points =
        ika::generate_gaussian_mixture(components, a.count, ika::derive_seed(a.seed, "points"));
    ika::write_patches(a.out, points);
    emit({{"command", "gen-data"},
          {"kind", "mixture"},
          {"rows", a.count},
          {"cols", a.dim},
          {"components", a.components},
          {"out", a.out}});
  } else {
    const ika::ImageSet images = ika::generate_synthetic_images(
        a.count, a.height, a.width, a.channels, ika::derive_seed(a.seed, "images"));
    ika::write_image_set(a.out, images);
    emit({{"command", "gen-data"},
          {"kind", "images"},
          {"count", a.count},
          {"height", a.height},
          {"width", a.width},
          {"channels", a.channels},
          {"out", a.out}});
  }
}

// ---------------------------------------------------------------------------
// preprocess

struct PreprocessArgs {
  std::string images;
  std::string out;
  std::string whitening;  // defaults to out with an .ikaw extension
  std::size_t patch = 7;
  std::size_t count = 10000;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  bool epsilon_given = false;
};

void cmd_preprocess(const PreprocessArgs& a) {
  if (a.patch == 0) throw UsageError("--patch must be positive");
  if (a.count < 2) throw UsageError("--count must be at least 2 (whitening needs two patches)");
  if (a.epsilon_given && !(a.epsilon >= 0.0)) throw UsageError("--epsilon must be >= 0");

  const ika::ImageSet raw = ika::read_image_set(a.images);
  if (a.patch > raw.height || a.patch > raw.width) {
    throw UsageError("--patch " + std::to_string(a.patch) + " does not fit into " +
                     std::to_string(raw.height) + "x" + std::to_string(raw.width) + " images");
  }

  const ika::ImageSet normalized = ika::global_contrast_normalize(raw);
  const ika::Matrix patches = ika::sample_patches(normalized, a.patch, a.patch, a.count,
                                                  ika::derive_seed(a.seed, "patch-sampling"));
  const ika::WhiteningTransform whitening =
      a.epsilon_given ? ika::fit_pca_whitening(patches, a.epsilon)
                      : ika::fit_pca_whitening(patches);
  const ika::NormalizeResult result = ika::unit_normalize_rows(whitening.apply_rows(patches));
  if (result.zero_rows > 0) {
    std::cerr << "warning: " << result.zero_rows
              << " all-zero patches left unnormalized (constant image regions)\n";
  }

  const std::filesystem::path whitening_path =
      a.whitening.empty() ? std::filesystem::path(a.out).replace_extension(".ikaw")
                          : std::filesystem::path(a.whitening);
  ika::write_patches(a.out, result.data);
  ika::write_whitening(whitening_path, whitening);
  emit({{"command", "preprocess"},
        {"patches", result.data.rows()},
        {"dim", result.data.cols()},
        {"epsilon", json_number(whitening.epsilon)},
        {"zero_rows", result.zero_rows},
        {"out", a.out},
        {"whitening", whitening_path.string()},
        {"percentile_rule", "nearest-rank"},
        {"rng_algorithm", std::string(ika::kRngAlgorithm)}});
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
  std::string method;
  std::string patches;
  std::string filter_source = "random";
  std::string out;
  std::size_t n = 0;
  std::size_t m = 0;
  bool m_given = false;
  std::size_t sample_size = 2000;
  bool sample_size_given = false;
  std::uint64_t seed = 0;
  double sigma2 = 0.0;
  bool sigma2_given = false;
  double sigma2_percentile = 10.0;
  std::size_t sigma2_pairs = 100000;
  std::size_t kmeans_batch = 1024;
  std::size_t kmeans_iters = 50;
};

ika::Matrix choose_filters(const ika::Matrix& data, const std::string& source, std::size_t n,
                           std::uint64_t seed, std::size_t kmeans_batch,
                           std::size_t kmeans_iters) {
  if (source == "random") {
    ika::Rng rng(ika::derive_seed(seed, "filter-choice"));
    return ika::select_rows(data, ika::sample_without_replacement(data.rows(), n, rng));
  }
  return ika::minibatch_kmeans(data, n, kmeans_batch, kmeans_iters,
                               ika::derive_seed(seed, "kmeans"));
}

void cmd_fit(const FitArgs& args) {
  FitArgs a = args;
  if (a.n == 0) throw UsageError("--n must be positive");
  if (!a.m_given) a.m = a.n;
  if (a.m == 0) throw UsageError("--m must be positive");
  if (a.m > a.n) throw UsageError("--m must not exceed --n");
  if (a.sample_size == 0 || a.sample_size > kMaxSampleSize) {
    throw UsageError("--sample-size must lie in [1, " + std::to_string(kMaxSampleSize) + "]");
  }
  if (a.sigma2_given && !(a.sigma2 > 0.0)) throw UsageError("--sigma2 must be positive");
  if (a.method == "nystrom" && a.sample_size_given) {
    std::cerr << "warning: --sample-size is ignored for --method nystrom"
                 " (the landmarks alone determine the fit)\n";
  }

  const ika::Matrix data = ika::read_patches(a.patches);
  if (a.n > data.rows()) {
    throw UsageError("--n exceeds the " + std::to_string(data.rows()) + " available patches");
  }
  if (a.method == "ika" && a.sample_size > data.rows()) {
    throw UsageError("--sample-size exceeds the " + std::to_string(data.rows()) +
                     " available patches");
  }

  const ika::Matrix filters =
      choose_filters(data, a.filter_source, a.n, a.seed, a.kmeans_batch, a.kmeans_iters);
  const double sigma2 =
      a.sigma2_given ? a.sigma2
                     : ika::percentile_sigma2(data, a.sigma2_percentile, a.sigma2_pairs,
                                              ika::derive_seed(a.seed, "sigma2"));
  const ika::KernelSpec kernel = ika::KernelSpec::gaussian(sigma2);

  ika::FeatureMap map = [&] {
    if (a.method == "ika") {
      ika::Rng rng(ika::derive_seed(a.seed, "patch-sampling"));
      const auto indices = ika::sample_without_replacement(data.rows(), a.sample_size, rng);
      return ika::fit_ika(kernel, ika::select_rows(data, indices),
                          ika::BasisSet::kernel_centered(kernel, filters), a.m);
    }
    return ika::fit_nystrom(kernel, filters, a.m);
  }();
  ika::save_feature_map(a.out, map);

  json summary{{"command", "fit"},
               {"method", a.method},
               {"filter_source", a.filter_source},
               {"n", a.n},
               {"m", map.output_dim()},
               {"sigma2", json_number(sigma2)},
               {"out", a.out}};
  if (a.method == "ika") summary["sample_size"] = a.sample_size;
  emit(summary);
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string model;
  std::string patches;
  std::size_t pairs = 200000;
  std::uint64_t seed = 0;
};

void cmd_eval(const EvalArgs& a) {
  if (a.pairs < 2) throw UsageError("--pairs must be at least 2");
  const ika::FeatureMap map = ika::load_feature_map(a.model);
  if (map.basis().kind() != ika::BasisSet::Kind::KernelCentered) {
    throw UsageError("model " + a.model +
                     " stores no kernel (monomial basis); eval needs a kernel-centered model");
  }
  const ika::Matrix test = ika::read_patches(a.patches);
  const ika::ErrorEstimate estimate = ika::empirical_error(
      map.basis().kernel(), map, test, a.pairs, ika::derive_seed(a.seed, "pair-sampling"));
  emit({{"command", "eval"},
        {"mean_sq_error", json_number(estimate.mean_sq_error)},
        {"std_error", json_number(estimate.std_error)},
        {"pairs", estimate.pair_count},
        {"model", a.model},
        {"patches", a.patches}});
}

// ---------------------------------------------------------------------------
// sweep

struct SweepConfig {
  std::string patches;
  std::string out;
  std::vector<std::string> methods{"ika", "nystrom"};
  std::size_t n = 0;
  std::vector<std::size_t> m_list;
  std::vector<std::size_t> sample_sizes;
  std::vector<std::uint64_t> seeds;
  std::string filter_source = "random";
  std::size_t pairs = 200000;
  std::uint64_t master_seed = 0;
  double test_fraction = 0.2;
  std::size_t threads = 1;
  std::string timing = "wall";  // "none" zeroes fit_seconds for byte-stable output
  double sigma2 = 0.0;
  bool sigma2_given = false;
  double sigma2_percentile = 10.0;
  std::size_t sigma2_pairs = 100000;
  std::size_t kmeans_batch = 1024;
  std::size_t kmeans_iters = 50;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw UsageError("config: key \"" + std::string(key) + "\": not an integer: \"" +
                     std::string(value) + "\"");
  }
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  const std::string buffer(value);
  char* end = nullptr;
  const double out = std::strtod(buffer.c_str(), &end);
  if (end != buffer.c_str() + buffer.size() || buffer.empty()) {
    throw UsageError("config: key \"" + std::string(key) + "\": not a number: \"" + buffer + "\"");
  }
  return out;
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> items;
  while (true) {
    const auto comma = value.find(',');
    items.push_back(trim(value.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return items;
}

template <typename T>
std::vector<T> parse_integer_list(std::string_view key, std::string_view value) {
  std::vector<T> out;
  for (const auto item : split_list(value)) out.push_back(parse_integer<T>(key, item));
  return out;
}

SweepConfig parse_sweep_config(const std::string& text) {
  SweepConfig cfg;
  bool have_n = false;
  std::size_t line_number = 0;
  std::istringstream stream(text);
  std::string raw_line;
  while (std::getline(stream, raw_line)) {
    ++line_number;
    std::string_view line(raw_line);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto equals = line.find('=');
    if (equals == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(line_number) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, equals));
    const std::string_view value = trim(line.substr(equals + 1));
    if (key.empty()) {
      throw UsageError("config line " + std::to_string(line_number) + ": empty key");
    }

    if (key == "patches") {
      cfg.patches = value;
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto item : split_list(value)) cfg.methods.emplace_back(item);
    } else if (key == "n") {
      cfg.n = parse_integer<std::size_t>(key, value);
      have_n = true;
    } else if (key == "m_list") {
      cfg.m_list = parse_integer_list<std::size_t>(key, value);
    } else if (key == "sample_sizes") {
      cfg.sample_sizes = parse_integer_list<std::size_t>(key, value);
    } else if (key == "seeds") {
      cfg.seeds = parse_integer_list<std::uint64_t>(key, value);
    } else if (key == "filter_source") {
      cfg.filter_source = value;
    } else if (key == "pairs") {
      cfg.pairs = parse_integer<std::size_t>(key, value);
    } else if (key == "master_seed") {
      cfg.master_seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "test_fraction") {
      cfg.test_fraction = parse_real(key, value);
    } else if (key == "threads") {
      cfg.threads = parse_integer<std::size_t>(key, value);
    } else if (key == "timing") {
      cfg.timing = value;
    } else if (key == "sigma2") {
      cfg.sigma2 = parse_real(key, value);
      cfg.sigma2_given = true;
    } else if (key == "sigma2_percentile") {
      cfg.sigma2_percentile = parse_real(key, value);
    } else if (key == "sigma2_pairs") {
      cfg.sigma2_pairs = parse_integer<std::size_t>(key, value);
    } else if (key == "kmeans_batch") {
      cfg.kmeans_batch = parse_integer<std::size_t>(key, value);
    } else if (key == "kmeans_iters") {
      cfg.kmeans_iters = parse_integer<std::size_t>(key, value);
    } else {
      throw UsageError("config: unknown key \"" + std::string(key) + "\"");
    }
  }

  if (cfg.patches.empty()) throw UsageError("config: missing required key \"patches\"");
  if (cfg.out.empty()) throw UsageError("config: missing required key \"out\"");
  if (!have_n || cfg.n == 0) throw UsageError("config: missing required key \"n\"");
  if (cfg.m_list.empty()) throw UsageError("config: missing required key \"m_list\"");
  if (cfg.sample_sizes.empty()) throw UsageError("config: missing required key \"sample_sizes\"");
  if (cfg.seeds.empty()) throw UsageError("config: missing required key \"seeds\"");
  if (cfg.methods.empty()) throw UsageError("config: key \"methods\": empty list");
  for (const auto& method : cfg.methods) {
    if (method != "ika" && method != "nystrom") {
      throw UsageError("config: key \"methods\": unknown method \"" + method + "\"");
    }
  }
  if (cfg.filter_source != "random" && cfg.filter_source != "kmeans") {
    throw UsageError("config: key \"filter_source\": must be random or kmeans");
  }
  if (cfg.timing != "wall" && cfg.timing != "none") {
    throw UsageError("config: key \"timing\": must be wall or none");
  }
  if (!(cfg.test_fraction > 0.0) || !(cfg.test_fraction < 1.0)) {
    throw UsageError("config: key \"test_fraction\": must lie in (0, 1)");
  }
  if (cfg.pairs < 2) throw UsageError("config: key \"pairs\": must be at least 2");
  if (cfg.sigma2_given && !(cfg.sigma2 > 0.0)) {
    throw UsageError("config: key \"sigma2\": must be positive");
  }
  for (const std::size_t s : cfg.sample_sizes) {
    if (s == 0 || s > kMaxSampleSize) {
      throw UsageError("config: key \"sample_sizes\": entries must lie in [1, " +
                       std::to_string(kMaxSampleSize) + "]");
    }
  }
  return cfg;
}

struct SweepArgs {
  std::string config;
  std::size_t threads = 1;
  bool threads_given = false;
};

void cmd_sweep(const SweepArgs& a) {
  const std::string config_bytes = read_file_bytes(a.config);
  SweepConfig cfg = parse_sweep_config(config_bytes);
  if (a.threads_given) cfg.threads = a.threads;

  const ika::Matrix data = ika::read_patches(cfg.patches);
  const ika::TrainTestSplit split = ika::train_test_split(
      data, cfg.test_fraction, ika::derive_seed(cfg.master_seed, "split"));
  if (cfg.n > split.train.rows()) {
    throw UsageError("config: n exceeds the " + std::to_string(split.train.rows()) +
                     " training rows left by the split");
  }

  // Filters are chosen once per sweep; rows vary only in (method, S, m, seed).
  const ika::Matrix filters = choose_filters(split.train, cfg.filter_source, cfg.n,
                                             cfg.master_seed, cfg.kmeans_batch, cfg.kmeans_iters);
  const double sigma2 =
      cfg.sigma2_given ? cfg.sigma2
                       : ika::percentile_sigma2(split.train, cfg.sigma2_percentile,
                                                cfg.sigma2_pairs,
                                                ika::derive_seed(cfg.master_seed, "sigma2"));
  const ika::KernelSpec kernel = ika::KernelSpec::gaussian(sigma2);

  ika::ComparisonConfig comparison;
  comparison.sample_sizes = cfg.sample_sizes;
  comparison.m_values = cfg.m_list;
  comparison.seeds = cfg.seeds;
  comparison.methods = cfg.methods;
  comparison.filter_source = cfg.filter_source;
  comparison.pair_count = cfg.pairs;
  comparison.threads = cfg.threads;
  comparison.measure_timing = cfg.timing == "wall";

  const std::vector<ika::ComparisonRow> rows =
      ika::compare_methods(kernel, split.train, split.test, filters, comparison);
  std::size_t failed = 0;
  for (const auto& row : rows) {
    if (row.ok()) continue;
    ++failed;
    std::cerr << "warning: row (" << row.method << ", S=" << row.sample_size << ", m=" << row.m
              << ", seed=" << row.seed << ") failed: " << row.error << "\n";
  }

  ika::write_comparison_csv(rows, std::filesystem::path(cfg.out));
  const double reduction = ika::mean_error_reduction(rows);

  const std::filesystem::path sidecar_path = cfg.out + ".meta.json";
  const json sidecar{{"config_hash", hex64(ika::fnv1a64(config_bytes))},
                     {"rng_algorithm", std::string(ika::kRngAlgorithm)},
                     {"percentile_rule", "nearest-rank"},
                     {"library_version", std::string(ika::kLibraryVersion)},
                     {"master_seed", cfg.master_seed},
                     {"filter_source", cfg.filter_source},
                     {"n", cfg.n},
                     {"sigma2", json_number(sigma2)},
                     {"sigma2_source", cfg.sigma2_given ? "explicit" : "percentile"},
                     {"timing", cfg.timing},
                     {"mean_error_reduction", json_number(reduction)}};
  {
    std::ofstream file(sidecar_path, std::ios::binary);
    if (!file) {
      throw ika::IoError(ika::IoError::Kind::OpenFailed, "cannot open " + sidecar_path.string());
    }
    file << sidecar.dump(2) << "\n";
    file.flush();
    if (!file.good()) {
      throw ika::IoError(ika::IoError::Kind::WriteFailed,
                         "write failed for " + sidecar_path.string());
    }
  }

  emit({{"command", "sweep"},
        {"rows", rows.size()},
        {"failed_rows", failed},
        {"csv", cfg.out},
        {"sidecar", sidecar_path.string()},
        {"sigma2", json_number(sigma2)},
        {"mean_error_reduction", json_number(reduction)}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank kernel approximation pipeline (IKA and Nystrom)"};
  app.require_subcommand(1);
  // Help lives on --help alone; -h would collide with the --h image flag.
  app.set_help_flag("--help", "Print help");
  auto add_subcommand = [&](const std::string& name, const std::string& description) {
    auto* sub = app.add_subcommand(name, description);
    sub->set_help_flag("--help", "Print help");
    return sub;
  };

  GenDataArgs gen;
  auto* gen_cmd = add_subcommand("gen-data", "Generate a synthetic dataset");
  gen_cmd->add_option("--kind", gen.kind, "mixture | images")
      ->check(CLI::IsMember({"mixture", "images"}));
  gen_cmd->add_option("--out", gen.out, "Output path (file for mixture, directory for images)")
      ->required();
  gen_cmd->add_option("--seed", gen.seed, "Master seed");
  gen_cmd->add_option("--count", gen.count, "Points or images to generate");
  gen_cmd->add_option("--dim", gen.dim, "Mixture dimension");
  gen_cmd->add_option("--components", gen.components, "Mixture component count");
  gen_cmd->add_option("--h", gen.height, "Image height");
  gen_cmd->add_option("--w", gen.width, "Image width");
  gen_cmd->add_option("--c", gen.channels, "Image channels");
  gen_cmd->callback([&] { cmd_gen_data(gen); });

  PreprocessArgs pre;
  auto* pre_cmd = add_subcommand("preprocess", "Images to whitened unit-norm patches");
  pre_cmd->add_option("--images", pre.images, "Image directory")->required();
  pre_cmd->add_option("--out", pre.out, "Output patch file")->required();
  pre_cmd->add_option("--whitening", pre.whitening,
                      "Whitening transform path (default: output with .ikaw)");
  pre_cmd->add_option("--patch", pre.patch, "Square patch side");
  pre_cmd->add_option("--count", pre.count, "Patches to sample");
  pre_cmd->add_option("--seed", pre.seed, "Master seed");
  pre_cmd->add_option("--epsilon", pre.epsilon, "Whitening regularizer (default: auto)")
      ->each([&](const std::string&) { pre.epsilon_given = true; });
  pre_cmd->callback([&] { cmd_preprocess(pre); });

  FitArgs fit;
  auto* fit_cmd = add_subcommand("fit", "Fit a feature map and save it");
  fit_cmd->add_option("--method", fit.method, "ika | nystrom")
      ->required()
      ->check(CLI::IsMember({"ika", "nystrom"}));
  fit_cmd->add_option("--patches", fit.patches, "Input patch file")->required();
  fit_cmd->add_option("--filters", fit.filter_source, "random | kmeans")
      ->check(CLI::IsMember({"random", "kmeans"}));
  fit_cmd->add_option("--n", fit.n, "Filter / landmark count")->required();
  fit_cmd->add_option("--m", fit.m, "Output dimension (default: n)")
      ->each([&](const std::string&) { fit.m_given = true; });
  fit_cmd->add_option("--sample-size", fit.sample_size, "IKA fitting sample size")
      ->each([&](const std::string&) { fit.sample_size_given = true; });
  fit_cmd->add_option("--seed", fit.seed, "Master seed");
  fit_cmd->add_option("--out", fit.out, "Output model path")->required();
  fit_cmd->add_option("--sigma2", fit.sigma2, "Kernel bandwidth (default: percentile rule)")
      ->each([&](const std::string&) { fit.sigma2_given = true; });
  fit_cmd->add_option("--sigma2-percentile", fit.sigma2_percentile,
                      "Percentile of squared distances");
  fit_cmd->add_option("--sigma2-pairs", fit.sigma2_pairs, "Pairs sampled for the percentile");
  fit_cmd->add_option("--kmeans-batch", fit.kmeans_batch, "Mini-batch size");
  fit_cmd->add_option("--kmeans-iters", fit.kmeans_iters, "Mini-batch iterations");
  fit_cmd->callback([&] { cmd_fit(fit); });

  EvalArgs eval;
  auto* eval_cmd = add_subcommand("eval", "Approximation error of a saved model");
  eval_cmd->add_option("--model", eval.model, "Model path")->required();
  eval_cmd->add_option("--patches", eval.patches, "Test patch file")->required();
  eval_cmd->add_option("--pairs", eval.pairs, "Monte-Carlo pair count");
  eval_cmd->add_option("--seed", eval.seed, "Master seed");
  eval_cmd->callback([&] { cmd_eval(eval); });

  SweepArgs sweep;
  auto* sweep_cmd = add_subcommand("sweep", "Run a comparison grid from a config file");
  sweep_cmd->add_option("--config", sweep.config, "key = value config file")->required();
  sweep_cmd->add_option("--threads", sweep.threads, "Parallel rows (overrides config)")
      ->each([&](const std::string&) { sweep.threads_given = true; });
  sweep_cmd->callback([&] { cmd_sweep(sweep); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
