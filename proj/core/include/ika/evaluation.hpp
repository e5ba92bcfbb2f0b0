#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ika/feature_map.hpp"
#include "ika/kernels.hpp"
#include "ika/matrix.hpp"

namespace ika {

struct ErrorEstimate {
  double mean_sq_error = 0.0;
  double std_error = 0.0;  // of the mean
  std::size_t pair_count = 0;
};

// Monte-Carlo estimate of E[(K(x, y) - <psi(x), psi(y)>)^2] over independent
// ordered pairs of test rows (i == j allowed: the expectation is over the
// product measure). When pair_count covers every ordered pair, all T^2 pairs
// are enumerated exactly once instead of sampled. Coordinates are drawn i
// then j from one stream, so a longer run extends a shorter one pair for
// pair.
ErrorEstimate empirical_error(const KernelSpec& kernel, const FeatureMap& map, const Matrix& test,
                              std::size_t pair_count, std::uint64_t seed);

struct ComparisonRow {
  std::string method;         // "ika" | "nystrom"
  std::string filter_source;  // provenance label carried through to the CSV
  std::size_t n = 0;          // filter / landmark count
  std::size_t m = 0;          // requested output dimension
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  double mean_sq_error = 0.0;
  double std_error = 0.0;
  double fit_seconds = 0.0;
  std::string error;  // empty on success; failed rows carry the message

  bool ok() const { return error.empty(); }
};

struct ComparisonConfig {
  std::vector<std::size_t> sample_sizes;
  std::vector<std::size_t> m_values;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> methods{"ika", "nystrom"};
  std::string filter_source = "random";
  std::size_t pair_count = 200000;
  std::size_t threads = 1;
  // Wall-clock fit timing is the one non-deterministic column; turning it off
  // (fit_seconds = 0) makes the whole table a pure function of the inputs.
  bool measure_timing = true;
};

// One row per (sample size, m, seed, method), in that loop order. IKA fits on
// a fresh size-S subsample of train; Nystrom uses the filters as landmarks.
// Every random stream is derived from the row's seed and a purpose label,
// never from the method or m, so paired rows share subsamples and pair
// streams (common random numbers). Fit failures become rows with a non-empty
// error and NaN statistics instead of aborting.
std::vector<ComparisonRow> compare_methods(const KernelSpec& kernel, const Matrix& train,
                                           const Matrix& test, const Matrix& filters,
                                           const ComparisonConfig& config);

// Mean over (sample_size, m, seed) configurations of
// (E_nystrom - E_ika) / E_nystrom. Configurations missing either row, with a
// failed row, or with E_nystrom <= 0 are skipped; NaN when nothing remains.
double mean_error_reduction(std::span<const ComparisonRow> rows);

// Columns: method,filter_source,n,m,sample_size,seed,mean_sq_error,std_error,
// rmse,fit_seconds. Failed rows print nan in the error columns. Numbers use
// shortest round-trip formatting, so the bytes are reproducible.
void write_comparison_csv(std::span<const ComparisonRow> rows, std::ostream& out);
void write_comparison_csv(std::span<const ComparisonRow> rows, const std::filesystem::path& path);

struct TrainTestSplit {
  Matrix train;
  Matrix test;
};

// Random split by a full shuffle of the row order; the first
// round(test_fraction * rows) shuffled rows (clamped to [1, rows - 1]) form
// the test set.
TrainTestSplit train_test_split(const Matrix& data, double test_fraction, std::uint64_t seed);

}  // namespace ika
