// Microbenchmarks for the pairwise overlap kernels and the assignment solver.

#include <benchmark/benchmark.h>

#include "motkit/assign.hpp"
#include "motkit/kernels.hpp"
#include "motkit/rng.hpp"

using namespace motkit;

namespace {

kernels::BoxArray random_boxes(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  kernels::BoxArray arr;
  arr.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    arr.push_back(Box{rng.uniform(0, 1800), rng.uniform(0, 1000), rng.uniform(20, 140),
                      rng.uniform(40, 280)});
  }
  return arr;
}

template <void (*Fill)(const kernels::BoxArray&, const kernels::BoxArray&, double*)>
void bench_fill(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const kernels::BoxArray a = random_boxes(n, 1);
  const kernels::BoxArray b = random_boxes(n, 2);
  std::vector<double> out(n * n);
  for (auto _ : state) {
    Fill(a, b, out.data());
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * n * n);
}

void bench_assignment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  CostMatrix m = CostMatrix::zeros(n, n);
  for (double& c : m.costs) c = rng.uniform(0.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_assignment(m).total_cost);
  }
}

}  // namespace

BENCHMARK_TEMPLATE(bench_fill, kernels::scalar::iou_matrix)
    ->Name("iou_matrix/scalar")
    ->Arg(32)
    ->Arg(128)
    ->Arg(512);
BENCHMARK_TEMPLATE(bench_fill, kernels::scalar::giou_matrix)
    ->Name("giou_matrix/scalar")
    ->Arg(128)
    ->Arg(512);
#if MOTKIT_X86_64
BENCHMARK_TEMPLATE(bench_fill, kernels::avx2::iou_matrix)
    ->Name("iou_matrix/avx2")
    ->Arg(32)
    ->Arg(128)
    ->Arg(512);
BENCHMARK_TEMPLATE(bench_fill, kernels::avx2::giou_matrix)
    ->Name("giou_matrix/avx2")
    ->Arg(128)
    ->Arg(512);
#endif
BENCHMARK(bench_assignment)->Arg(16)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
