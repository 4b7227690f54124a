// Benchmarks for the functional simulator: masked GEMM, full-chain runs in
// both execution orders, and pruning.
#include <benchmark/benchmark.h>

#include <random>

#include "sparseflow/funcsim.hpp"
#include "sparseflow/graph.hpp"
#include "sparseflow/sparsity.hpp"
#include "sparseflow/tensor.hpp"

namespace {

using namespace sparseflow;

DenseTensor random_tensor(std::int64_t rows, std::int64_t cols,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> dist(0.0f, 1.0f);
  DenseTensor t(rows, cols);
  for (auto& v : t.values) v = dist(rng);
  return t;
}

void BM_GemmMasked(benchmark::State& state) {
  const double sparsity = static_cast<double>(state.range(0)) / 100.0;
  DenseTensor a = random_tensor(64, 256, 1);
  MaskedWeights w{random_tensor(256, 256, 2),
                  random_mask(256, 256, sparsity, 3)};
  for (auto _ : state) benchmark::DoNotOptimize(gemm(a, w));
  state.SetItemsProcessed(state.iterations() * 64 * 256 * 256);
}
BENCHMARK(BM_GemmMasked)->Arg(0)->Arg(50)->Arg(90);

void BM_RunKbk(benchmark::State& state) {
  Graph g = build_ffn_chain(32, 64, 256, 2, 0.5, 20);
  DenseTensor input = random_tensor(32, 64, 1);
  std::vector<MaskedWeights> weights{
      {random_tensor(64, 256, 2), random_mask(64, 256, 0.5, 3)},
      {random_tensor(256, 64, 4), random_mask(256, 64, 0.5, 5)}};
  for (auto _ : state)
    benchmark::DoNotOptimize(run_kbk(g, input, weights));
}
BENCHMARK(BM_RunKbk);

void BM_RunDf(benchmark::State& state) {
  Graph g = build_ffn_chain(32, 64, 256, 2, 0.5, 20);
  DenseTensor input = random_tensor(32, 64, 1);
  std::vector<MaskedWeights> weights{
      {random_tensor(64, 256, 2), random_mask(64, 256, 0.5, 3)},
      {random_tensor(256, 64, 4), random_mask(256, 64, 0.5, 5)}};
  const std::int64_t tile_rows = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(run_df(g, input, weights, tile_rows));
}
BENCHMARK(BM_RunDf)->Arg(1)->Arg(8)->Arg(32);

void BM_PruneMagnitude(benchmark::State& state) {
  DenseTensor w = random_tensor(512, 512, 7);
  for (auto _ : state) benchmark::DoNotOptimize(prune_magnitude(w, 0.9));
}
BENCHMARK(BM_PruneMagnitude);

}  // namespace
