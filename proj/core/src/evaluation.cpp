#include "ika/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <utility>

#include "ika/basis.hpp"
#include "ika/errors.hpp"
#include "ika/ika.hpp"
#include "ika/nystrom.hpp"
#include "ika/rng.hpp"

namespace ika {

namespace {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double value) {
    const double y = value - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double kahan_mean(std::span<const double> values) {
  KahanSum acc;
  for (double v : values) acc.add(v);
  return acc.sum / static_cast<double>(values.size());
}

}  // namespace

ErrorEstimate empirical_error(const KernelSpec& kernel, const FeatureMap& map, const Matrix& test,
                              std::size_t pair_count, std::uint64_t seed) {
  if (pair_count < 2) throw std::invalid_argument("empirical_error: pair_count must be >= 2");
  if (test.rows() == 0) throw std::invalid_argument("empirical_error: empty test set");
  if (test.cols() != map.input_dim()) {
    throw std::invalid_argument("empirical_error: test dimension does not match the map");
  }

  const std::size_t t = test.rows();
  const std::size_t m = map.output_dim();
  Matrix features(t, m);
  std::vector<double> scratch(map.basis_size());
  for (std::size_t i = 0; i < t; ++i) {
    map.apply(test.row(i), features.row(i), scratch);
  }

  const bool exhaustive = pair_count / t >= t;  // pair_count >= t^2 without overflow
  std::vector<double> values;
  auto record = [&](std::size_t i, std::size_t j) {
    const double diff =
        kernel.eval(test.row(i), test.row(j)) - dot(features.row(i), features.row(j));
    values.push_back(diff * diff);
  };
  if (exhaustive) {
    values.reserve(t * t);
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t j = 0; j < t; ++j) record(i, j);
    }
  } else {
    values.reserve(pair_count);
    Rng rng(seed);
    for (std::size_t p = 0; p < pair_count; ++p) {
      const std::size_t i = rng.uniform_index(t);
      const std::size_t j = rng.uniform_index(t);
      record(i, j);
    }
  }

  const double mean = kahan_mean(values);
  double std_error = 0.0;
  if (values.size() > 1) {
    KahanSum acc;
    for (double v : values) {
      const double c = v - mean;
      acc.add(c * c);
    }
    const double sample_var = acc.sum / static_cast<double>(values.size() - 1);
    std_error = std::sqrt(sample_var / static_cast<double>(values.size()));
  }
  return ErrorEstimate{mean, std_error, values.size()};
}

namespace {

ComparisonRow run_row(const KernelSpec& kernel, const Matrix& train, const Matrix& test,
                      const Matrix& filters, const ComparisonConfig& config, std::size_t s,
                      std::size_t m, std::uint64_t seed, const std::string& method) {
  ComparisonRow row;
  row.method = method;
  row.filter_source = config.filter_source;
  row.n = filters.rows();
  row.m = m;
  row.sample_size = s;
  row.seed = seed;
  row.mean_sq_error = std::numeric_limits<double>::quiet_NaN();
  row.std_error = std::numeric_limits<double>::quiet_NaN();
  try {
    const auto start = std::chrono::steady_clock::now();
    FeatureMap map = [&] {
      if (method == "ika") {
        Rng sampler(derive_seed(seed, "fit-sample"));
        const auto indices = sample_without_replacement(train.rows(), s, sampler);
        return fit_ika(kernel, select_rows(train, indices),
                       BasisSet::kernel_centered(kernel, filters), m);
      }
      return fit_nystrom(kernel, filters, m);
    }();
    if (config.measure_timing) {
      row.fit_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    const ErrorEstimate estimate =
        empirical_error(kernel, map, test, config.pair_count, derive_seed(seed, "pairs"));
    row.mean_sq_error = estimate.mean_sq_error;
    row.std_error = estimate.std_error;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<ComparisonRow> compare_methods(const KernelSpec& kernel, const Matrix& train,
                                           const Matrix& test, const Matrix& filters,
                                           const ComparisonConfig& config) {
  if (train.cols() != test.cols() || train.cols() != filters.cols()) {
    throw std::invalid_argument("compare_methods: dimension mismatch");
  }
  if (filters.rows() == 0) throw std::invalid_argument("compare_methods: no filters");
  if (config.pair_count < 2) throw std::invalid_argument("compare_methods: pair_count must be >= 2");
  for (const auto& method : config.methods) {
    if (method != "ika" && method != "nystrom") {
      throw std::invalid_argument("compare_methods: unknown method \"" + method + "\"");
    }
  }

  struct RowSpec {
    std::size_t s, m;
    std::uint64_t seed;
    const std::string* method;
  };
  std::vector<RowSpec> specs;
  for (std::size_t s : config.sample_sizes) {
    for (std::size_t m : config.m_values) {
      for (std::uint64_t seed : config.seeds) {
        for (const auto& method : config.methods) specs.push_back({s, m, seed, &method});
      }
    }
  }

  std::vector<ComparisonRow> rows(specs.size());
  auto compute = [&](std::size_t i) {
    rows[i] = run_row(kernel, train, test, filters, config, specs[i].s, specs[i].m, specs[i].seed,
                      *specs[i].method);
  };
  const std::size_t workers = std::min(std::max<std::size_t>(config.threads, 1), specs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) compute(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < specs.size(); i = next.fetch_add(1)) {
          compute(i);
        }
      });
    }
    for (auto& thread : pool) thread.join();
  }
  return rows;
}

double mean_error_reduction(std::span<const ComparisonRow> rows) {
  using Key = std::tuple<std::size_t, std::size_t, std::uint64_t>;
  std::map<Key, std::pair<const ComparisonRow*, const ComparisonRow*>> configs;
  for (const auto& row : rows) {
    auto& slot = configs[Key{row.sample_size, row.m, row.seed}];
    if (row.method == "ika") slot.first = &row;
    if (row.method == "nystrom") slot.second = &row;
  }
  KahanSum acc;
  std::size_t used = 0;
  for (const auto& [key, pair] : configs) {
    const auto* ika_row = pair.first;
    const auto* nys_row = pair.second;
    if (!ika_row || !nys_row || !ika_row->ok() || !nys_row->ok()) continue;
    if (!(nys_row->mean_sq_error > 0.0)) continue;
    acc.add((nys_row->mean_sq_error - ika_row->mean_sq_error) / nys_row->mean_sq_error);
    ++used;
  }
  if (used == 0) return std::numeric_limits<double>::quiet_NaN();
  return acc.sum / static_cast<double>(used);
}

namespace {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

void write_comparison_csv(std::span<const ComparisonRow> rows, std::ostream& out) {
  out << "method,filter_source,n,m,sample_size,seed,mean_sq_error,std_error,rmse,fit_seconds\n";
  for (const auto& row : rows) {
    out << csv_field(row.method) << ',' << csv_field(row.filter_source) << ',' << row.n << ','
        << row.m << ',' << row.sample_size << ',' << row.seed << ','
        << format_double(row.mean_sq_error) << ',' << format_double(row.std_error) << ','
        << format_double(std::sqrt(row.mean_sq_error)) << ',' << format_double(row.fit_seconds)
        << '\n';
  }
}

void write_comparison_csv(std::span<const ComparisonRow> rows,
                          const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError(IoError::Kind::OpenFailed, "cannot open " + path.string());
  write_comparison_csv(rows, file);
  file.flush();
  if (!file.good()) throw IoError(IoError::Kind::WriteFailed, "write failed for " + path.string());
}

TrainTestSplit train_test_split(const Matrix& data, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
    throw std::invalid_argument("train_test_split: fraction must lie in (0, 1)");
  }
  if (data.rows() < 2) throw std::invalid_argument("train_test_split: needs at least two rows");

  Rng rng(seed);
  const auto order = sample_without_replacement(data.rows(), data.rows(), rng);
  const long long rounded = std::llround(test_fraction * static_cast<double>(data.rows()));
  const auto count = std::clamp<std::size_t>(static_cast<std::size_t>(rounded), 1, data.rows() - 1);

  const std::span<const std::size_t> shuffled(order);
  return TrainTestSplit{select_rows(data, shuffled.subspan(count)),
                        select_rows(data, shuffled.first(count))};
}

}  // namespace ika
