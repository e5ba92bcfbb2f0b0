// Microbenchmarks for the fitting pipeline's hot paths. Sizes follow the
// desk-scale experiments (S up to 4096, n up to 128); run with
// --benchmark_filter to isolate one stage.
#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "ika/basis.hpp"
#include "ika/ika.hpp"
#include "ika/kernels.hpp"
#include "ika/linalg.hpp"
#include "ika/nystrom.hpp"
#include "ika/preprocess.hpp"
#include "ika/rng.hpp"

namespace {

ika::Matrix random_points(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  ika::Rng rng(seed);
  ika::Matrix m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
  return m;
}

void bm_build_gram(benchmark::State& state) {
  const auto s = static_cast<std::size_t>(state.range(0));
  const ika::Matrix points = random_points(s, 10, 1);
  const ika::KernelSpec kernel = ika::KernelSpec::gaussian(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ika::build_gram(kernel, points));
  }
  state.SetComplexityN(static_cast<std::int64_t>(s));
}
BENCHMARK(bm_build_gram)->Arg(256)->Arg(1024)->Arg(4096)->Complexity(benchmark::oNSquared);

void bm_sym_eig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ika::Matrix r = random_points(n, n, 2);
  const ika::SymmetricMatrix a =
      ika::SymmetricMatrix::from_upper(ika::matmul(r, ika::transpose(r)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ika::sym_eig(a));
  }
}
BENCHMARK(bm_sym_eig)->Arg(32)->Arg(64)->Arg(128);

void bm_generalized_eig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ika::Matrix r = random_points(n, n, 3);
  ika::Matrix spd = ika::matmul(r, ika::transpose(r));
  for (std::size_t i = 0; i < n; ++i) spd(i, i) += 1e-3;
  const ika::SymmetricMatrix p = ika::SymmetricMatrix::from_upper(std::move(spd));
  const ika::Matrix q = random_points(n, n, 4);
  const ika::SymmetricMatrix m =
      ika::SymmetricMatrix::from_upper(ika::matmul(q, ika::transpose(q)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ika::solve_generalized_eig(m, p));
  }
}
BENCHMARK(bm_generalized_eig)->Arg(32)->Arg(64)->Arg(128);

void bm_fit_ika(benchmark::State& state) {
  const auto s = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const ika::Matrix sample = random_points(s, 10, 5);
  const ika::Matrix filters = random_points(n, 10, 6);
  const ika::KernelSpec kernel = ika::KernelSpec::gaussian(2.0);
  const ika::BasisSet basis = ika::BasisSet::kernel_centered(kernel, filters);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ika::fit_ika(kernel, sample, basis, n));
  }
}
BENCHMARK(bm_fit_ika)->Args({512, 32})->Args({2048, 32})->Args({2048, 64});

void bm_fit_nystrom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ika::Matrix landmarks = random_points(n, 10, 7);
  const ika::KernelSpec kernel = ika::KernelSpec::gaussian(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ika::fit_nystrom(kernel, landmarks, n));
  }
}
BENCHMARK(bm_fit_nystrom)->Arg(32)->Arg(64)->Arg(128);

void bm_feature_apply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ika::Matrix sample = random_points(1024, 10, 8);
  const ika::Matrix filters = random_points(n, 10, 9);
  const ika::KernelSpec kernel = ika::KernelSpec::gaussian(2.0);
  const ika::FeatureMap map =
      ika::fit_ika(kernel, sample, ika::BasisSet::kernel_centered(kernel, filters), n);
  const ika::Matrix probes = random_points(256, 10, 10);
  std::vector<double> out(map.output_dim());
  std::vector<double> scratch(map.basis_size());
  std::size_t i = 0;
  for (auto _ : state) {
    map.apply(probes.row(i), out, scratch);
    benchmark::DoNotOptimize(out.data());
    i = (i + 1) % probes.rows();
  }
}
BENCHMARK(bm_feature_apply)->Arg(32)->Arg(128);

void bm_minibatch_kmeans(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const ika::Matrix data = random_points(20000, 25, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ika::minibatch_kmeans(data, k, 1024, 20, 12));
  }
}
BENCHMARK(bm_minibatch_kmeans)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
