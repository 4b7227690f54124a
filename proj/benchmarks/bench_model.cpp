// Benchmarks for the analytical paths: table evaluation, per-model scenario
// bundles, partition planning, and sweeps.
#include <benchmark/benchmark.h>

#include "sparseflow/dataflow.hpp"
#include "sparseflow/graph.hpp"
#include "sparseflow/kbk.hpp"
#include "sparseflow/machine.hpp"
#include "sparseflow/report.hpp"
#include "sparseflow/scenario.hpp"

namespace {

using namespace sparseflow;

void BM_ReferenceTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(table1());
}
BENCHMARK(BM_ReferenceTable);

void BM_KbkScenario(benchmark::State& state) {
  GraphFamily family = [](double s) { return FfnConfig{}.build(s); };
  MachineSpec m = preset("paper-kbk");
  for (auto _ : state)
    benchmark::DoNotOptimize(kbk_scenario(family, m, 0.875));
}
BENCHMARK(BM_KbkScenario);

void BM_DfScenario(benchmark::State& state) {
  GraphFamily family = [](double s) { return FfnConfig{}.build(s); };
  MachineSpec m = preset("paper-df");
  for (auto _ : state)
    benchmark::DoNotOptimize(df_scenario(family, m, 0.875));
}
BENCHMARK(BM_DfScenario);

void BM_PartitionChain(benchmark::State& state) {
  Graph g = FfnConfig{}.build(0.0);
  for (auto _ : state) benchmark::DoNotOptimize(partition_chain(g, 5e8));
}
BENCHMARK(BM_PartitionChain);

void BM_PartitionLongChain(benchmark::State& state) {
  // A deep elementwise/GEMM ladder stresses the quadratic section scan.
  const auto ops_count = state.range(0);
  std::vector<OpNode> ops;
  for (std::int64_t i = 0; i < ops_count; ++i) {
    if (i % 2 == 0) {
      TensorSpec w{256, 256, 2, TensorRole::Weight, 0.5};
      ops.emplace_back(GemmOp{64, 256, 256, w});
    } else {
      ops.emplace_back(ElementwiseOp{256, 20, 2, "gelu"});
    }
  }
  Graph g = make_chain(64, std::move(ops));
  for (auto _ : state) benchmark::DoNotOptimize(partition_chain(g, 3e5));
}
BENCHMARK(BM_PartitionLongChain)->Arg(16)->Arg(64)->Arg(256);

void BM_SweepCsv(benchmark::State& state) {
  Scenario sc = default_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_csv(sc, 0.05));
}
BENCHMARK(BM_SweepCsv);

}  // namespace

BENCHMARK_MAIN();
