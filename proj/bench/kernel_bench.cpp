// Serial reference vs OpenMP kernels. Run with --benchmark_filter=<kernel> to
// compare one pair; set OMP_NUM_THREADS to pick the team size.

#include <benchmark/benchmark.h>

#include "vgsynth/embed.hpp"
#include "vgsynth/kernels.hpp"
#include "vgsynth/pipeline.hpp"
#include "vgsynth/rng.hpp"

using namespace vgsynth;
using kernels::Matrix;

namespace {

Matrix cloud(std::size_t n, std::size_t dims, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(n, dims);
  for (auto& x : m.data) x = standard_normal(rng);
  return m;
}

Matrix joint_affinities(const Matrix& y) {
  const auto p = kernels::serial::conditional_affinities(kernels::serial::squared_distances(y), 30.0, 1e-5);
  Matrix joint(y.rows, y.rows);
  for (std::size_t i = 0; i < y.rows; ++i)
    for (std::size_t j = 0; j < y.rows; ++j)
      joint(i, j) = (p(i, j) + p(j, i)) / (2.0 * static_cast<double>(y.rows));
  return joint;
}

template <bool Parallel>
void similar_value_pairs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  std::vector<double> v(n);
  std::vector<std::uint32_t> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = uniform01(rng);
    g[i] = static_cast<std::uint32_t>(i % 20);
  }
  for (auto _ : state) {
    auto out = Parallel ? kernels::similar_value_pairs(v, g, 0.01) : kernels::serial::similar_value_pairs(v, g, 0.01);
    benchmark::DoNotOptimize(out);
  }
}

template <bool Parallel>
void dtw_to_reference(benchmark::State& state) {
  Rng rng(2);
  std::vector<std::vector<double>> cands(static_cast<std::size_t>(state.range(0)), std::vector<double>(20));
  for (auto& c : cands)
    for (auto& x : c) x = uniform01(rng);
  std::vector<double> ref(20);
  for (auto& x : ref) x = uniform01(rng);
  for (auto _ : state) {
    auto out = Parallel ? kernels::dtw_to_reference(cands, ref) : kernels::serial::dtw_to_reference(cands, ref);
    benchmark::DoNotOptimize(out);
  }
}

template <bool Parallel>
void affinities(benchmark::State& state) {
  const auto sq = kernels::serial::squared_distances(cloud(static_cast<std::size_t>(state.range(0)), 20, 3));
  for (auto _ : state) {
    auto out = Parallel ? kernels::conditional_affinities(sq, 30.0, 1e-5)
                        : kernels::serial::conditional_affinities(sq, 30.0, 1e-5);
    benchmark::DoNotOptimize(out);
  }
}

template <bool Parallel>
void tsne_gradient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto y = cloud(n, 2, 4);
  const auto p = joint_affinities(y);
  for (auto _ : state) {
    auto out = Parallel ? kernels::tsne_gradient(p, y, 1.0) : kernels::serial::tsne_gradient(p, y, 1.0);
    benchmark::DoNotOptimize(out);
  }
}

template <bool Parallel>
void knn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto y = cloud(n, 2, 5);
  std::vector<std::uint8_t> origin(n);
  for (std::size_t i = 0; i < n; ++i) origin[i] = static_cast<std::uint8_t>(i % 2);
  for (auto _ : state) {
    auto out = Parallel ? kernels::knn(y, 10, origin) : kernels::serial::knn(y, 10, origin);
    benchmark::DoNotOptimize(out);
  }
}

template <bool Parallel>
void generate_all(benchmark::State& state) {
  CorpusParams cp;
  cp.tickers = static_cast<std::size_t>(state.range(0));
  cp.days = 500;
  const auto windows = prepare_windows(make_corpus(cp), 20, 20);
  GenerateOptions opt;
  for (auto _ : state) {
    auto out = Parallel ? vgsynth::generate_all(windows, opt) : vgsynth::serial::generate_all(windows, opt);
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK(similar_value_pairs<false>)->Arg(2000)->Arg(20000);
BENCHMARK(similar_value_pairs<true>)->Arg(2000)->Arg(20000);
BENCHMARK(dtw_to_reference<false>)->Arg(1000);
BENCHMARK(dtw_to_reference<true>)->Arg(1000);
BENCHMARK(affinities<false>)->Arg(500)->Arg(1000);
BENCHMARK(affinities<true>)->Arg(500)->Arg(1000);
BENCHMARK(tsne_gradient<false>)->Arg(500)->Arg(1000);
BENCHMARK(tsne_gradient<true>)->Arg(500)->Arg(1000);
BENCHMARK(knn<false>)->Arg(1000);
BENCHMARK(knn<true>)->Arg(1000);
BENCHMARK(generate_all<false>)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(generate_all<true>)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
