#include <benchmark/benchmark.h>

#include <vector>

#include "haarconv/kernels.hpp"
#include "haarconv/random.hpp"
#include "haarconv/rotation.hpp"

namespace {

using namespace haarconv;

std::vector<double> random_weights(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, streams::fixture, n);
  std::vector<double> w(n);
  double total = 0;
  for (double& v : w) total += v = rng.uniform();
  for (double& v : w) v /= total;
  return w;
}

GroupPtr group_for(std::int64_t arg) { return arg == 0 ? symmetric_group(4) : cyclic_group(std::size_t(arg)); }

template <bool Parallel>
void BM_group_convolve(benchmark::State& state) {
  const GroupPtr g = group_for(state.range(0));
  const auto a = random_weights(g->order(), 1), b = random_weights(g->order(), 2);
  std::vector<double> out(g->order());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::group_convolve(*g, a, b, out);
    else
      kernels::serial::group_convolve(*g, a, b, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_coset_convolve(benchmark::State& state) {
  const GroupPtr g = symmetric_group(4);
  const CosetSpace x(subgroups(g).at(std::size_t(state.range(0))));
  const FiniteSection s(x);
  const auto a = random_weights(x.size(), 3), b = random_weights(x.size(), 4);
  std::vector<double> out(x.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::coset_convolve(x, s.table(), a, b, out);
    else
      kernels::serial::coset_convolve(x, s.table(), a, b, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_distance_matrix(benchmark::State& state) {
  const auto pts = haar_sample_so3(std::size_t(state.range(0)), 5);
  for (auto _ : state) {
    auto d = Parallel ? kernels::distance_matrix_parallel<Rotation>(pts) : kernels::distance_matrix_serial<Rotation>(pts);
    benchmark::DoNotOptimize(d.data());
  }
}

template <bool Parallel>
void BM_block_sum(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const auto d = random_weights(n * n, 6);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; i += 2) idx.push_back(i);
  for (auto _ : state) {
    const double v = Parallel ? kernels::parallel::block_sum(d, n, idx) : kernels::serial::block_sum(d, n, idx);
    benchmark::DoNotOptimize(v);
  }
}

}  // namespace

// 0 selects S4, other arguments Z_m.
BENCHMARK(BM_group_convolve<false>)->Arg(0)->Arg(12)->Arg(64);
BENCHMARK(BM_group_convolve<true>)->Arg(0)->Arg(12)->Arg(64);
BENCHMARK(BM_coset_convolve<false>)->Arg(1)->Arg(10);
BENCHMARK(BM_coset_convolve<true>)->Arg(1)->Arg(10);
BENCHMARK(BM_distance_matrix<false>)->Arg(250)->Arg(1000);
BENCHMARK(BM_distance_matrix<true>)->Arg(250)->Arg(1000);
BENCHMARK(BM_block_sum<false>)->Arg(1000);
BENCHMARK(BM_block_sum<true>)->Arg(1000);

BENCHMARK_MAIN();
