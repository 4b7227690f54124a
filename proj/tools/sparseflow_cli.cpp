// Command-line front end: scenario analysis, the reference table, sparsity
// sweeps, partition planning, simulator equivalence checks, and schedule
// planning. Exit codes: 0 success, 1 check failure, 2 input error.
#include <charconv>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sparseflow/dataflow.hpp"
#include "sparseflow/funcsim.hpp"
#include "sparseflow/graph.hpp"
#include "sparseflow/kbk.hpp"
#include "sparseflow/machine.hpp"
#include "sparseflow/report.hpp"
#include "sparseflow/scenario.hpp"
#include "sparseflow/sparsity.hpp"
#include "sparseflow/tensor.hpp"

namespace {

using namespace sparseflow;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

std::string fmt3(double x) {
  char buf[64];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 3);
  return std::string(buf, end);
}

Scenario load_scenario(const std::string& path, const std::string& format) {
  Scenario sc = path.empty() ? default_scenario() : parse_scenario_file(path);
  if (!format.empty()) sc.format = format;
  sc.validate();
  return sc;
}

int cmd_analyze(const std::string& scenario_path, const std::string& format) {
  Scenario sc = load_scenario(scenario_path, format);
  std::cout << format_report(make_report(sc), sc.format);
  return kExitOk;
}

int cmd_sweep(const std::string& scenario_path, double step) {
  Scenario sc = load_scenario(scenario_path, "csv");
  std::cout << sweep_csv(sc, step);
  return kExitOk;
}

int cmd_partition(const std::string& scenario_path, double capacity) {
  Scenario sc = load_scenario(scenario_path, "");
  // Plans are per-instance: the footprint depends on sparsity, so plan the
  // first listed level.
  Graph g = sc.graph.build(sc.sparsity_levels.front());
  SectionPlan plan = partition_chain(g, capacity);
  std::cout << render_section_plan(g, plan);
  return kExitOk;
}

struct SimcheckArgs {
  std::int64_t tokens = 4;
  std::int64_t model_dim = 8;
  std::int64_t ffn_dim = 32;
  double sparsity = 0.5;
  std::uint64_t seed = 7;
  std::int64_t tile_rows = 1;
  std::string input_path;              // optional tensor import
  std::vector<std::string> mask_paths; // optional mask imports, GEMM order
  std::string dump_dir;                // optional tensor/mask export
  bool inject_corruption = false;      // negative control for the comparator
};

int cmd_simcheck(const SimcheckArgs& a) {
  Graph g = build_ffn_chain(a.tokens, a.model_dim, a.ffn_dim, /*elem_bytes=*/2,
                            a.sparsity, /*gelu_flops_per_elem=*/20);

  std::mt19937_64 rng(a.seed);
  std::normal_distribution<float> dist(0.0f, 1.0f);
  auto random_tensor = [&](std::int64_t rows, std::int64_t cols) {
    DenseTensor t(rows, cols);
    for (auto& v : t.values) v = dist(rng);
    return t;
  };

  DenseTensor input = a.input_path.empty()
                          ? random_tensor(a.tokens, a.model_dim)
                          : read_tensor_file(a.input_path);
  if (input.rows != a.tokens || input.cols != a.model_dim)
    throw std::invalid_argument("input tensor must be tokens x model_dim");

  std::vector<MaskedWeights> weights;
  std::size_t gemm_index = 0;
  for (const auto& op : g.ops) {
    const auto* gm = std::get_if<GemmOp>(&op);
    if (!gm) continue;
    MaskedWeights w;
    w.weights = random_tensor(gm->k, gm->n);
    if (gemm_index < a.mask_paths.size())
      w.mask = read_mask_file(a.mask_paths[gemm_index]);
    else
      w.mask = random_mask(gm->k, gm->n, a.sparsity, a.seed + gemm_index);
    w.validate();
    weights.push_back(std::move(w));
    ++gemm_index;
  }

  SimStats kbk_stats;
  DenseTensor ref = run_kbk(g, input, weights, &kbk_stats);

  std::vector<MaskedWeights> df_weights = weights;
  if (a.inject_corruption) {
    // Perturb the first kept weight of GEMM 0 so the pipelines must diverge.
    auto& w = df_weights.front();
    bool done = false;
    for (std::size_t i = 0; i < w.weights.values.size() && !done; ++i)
      if (w.mask.bits[i]) {
        w.weights.values[i] += 1.0f;
        done = true;
      }
  }
  DenseTensor out = run_df(g, input, df_weights, a.tile_rows);

  if (!a.dump_dir.empty()) {
    write_tensor_file(a.dump_dir + "/input.txt", input);
    write_tensor_file(a.dump_dir + "/output.txt", out);
    for (std::size_t i = 0; i < weights.size(); ++i)
      write_mask_file(a.dump_dir + "/mask" + std::to_string(i) + ".txt",
                      weights[i].mask);
  }

  double mask_s = 0.0;
  std::int64_t mask_total = 0;
  for (const auto& w : weights) {
    mask_s += static_cast<double>(w.mask.zero_count());
    mask_total += w.mask.size();
  }
  mask_s /= static_cast<double>(mask_total);

  std::cout << "effective macs: " << kbk_stats.effective_macs << " / "
            << kbk_stats.dense_macs << " (ratio "
            << fmt3(kbk_stats.effective_ratio()) << ", mask density "
            << fmt3(1.0 - mask_s) << ")\n";

  for (std::size_t i = 0; i < ref.values.size(); ++i) {
    if (ref.values[i] != out.values[i]) {
      std::cout << "kbk vs df: MISMATCH at element " << i << " (row "
                << i / static_cast<std::size_t>(ref.cols) << ", col "
                << i % static_cast<std::size_t>(ref.cols) << ")\n";
      return kExitCheckFailed;
    }
  }
  std::cout << "kbk vs df: MATCH (" << ref.size() << " elements, tile_rows "
            << a.tile_rows << ")\n";
  return kExitOk;
}

int cmd_s2d(std::int64_t total, std::int64_t sparse, double speedup) {
  S2dSchedule sched{total, sparse, speedup};
  std::cout << fmt3(s2d_end_to_end_speedup(sched)) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytical cost model for sparse FFN inference under "
               "kernel-by-kernel and dataflow execution"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string format;

  auto* analyze =
      app.add_subcommand("analyze", "Evaluate a scenario file and render its "
                                    "bandwidth/memory/speedup report");
  analyze->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required();
  analyze->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "markdown"}));

  auto* table1_cmd = app.add_subcommand(
      "table1", "Render the built-in reference scenario (sparsity 0, 0.5, "
                "0.875, 0.95 on the reference machine)");
  table1_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "markdown"}));

  double step = 0.0;
  auto* sweep =
      app.add_subcommand("sweep", "CSV sweep over the grid {0, step, 2*step, "
                                  "...} below 1");
  sweep->add_option("--scenario", scenario_path, "Scenario JSON file");
  sweep->add_option("--step", step, "Grid step in (0,1)")->required();

  double capacity = 0.0;
  auto* partition = app.add_subcommand(
      "partition", "Split the chain into on-chip sections under a capacity");
  partition->add_option("--scenario", scenario_path, "Scenario JSON file");
  partition->add_option("--capacity", capacity, "On-chip capacity in bytes")
      ->required();

  SimcheckArgs sim;
  auto* simcheck = app.add_subcommand(
      "simcheck", "Certify that tiled dataflow execution is bit-identical to "
                  "kernel-by-kernel execution");
  simcheck->add_option("--tokens", sim.tokens, "Token rows");
  simcheck->add_option("--model-dim", sim.model_dim, "Model width");
  simcheck->add_option("--ffn-dim", sim.ffn_dim, "Hidden width");
  simcheck->add_option("--sparsity", sim.sparsity, "Weight sparsity fraction")
      ->check(CLI::Range(0.0, 0.9999));
  simcheck->add_option("--seed", sim.seed, "RNG seed");
  simcheck->add_option("--tile-rows", sim.tile_rows, "Rows per pipeline tile");
  simcheck->add_option("--input", sim.input_path,
                       "Read the input tensor from a file instead of the RNG");
  simcheck->add_option("--mask", sim.mask_paths,
                       "Read a weight mask from a file (repeat per GEMM)");
  simcheck->add_option("--dump", sim.dump_dir,
                       "Write input/output tensors and masks to a directory");
  simcheck->add_flag("--inject-corruption", sim.inject_corruption,
                     "Corrupt one weight before the dataflow run (the check "
                     "must then fail)");

  std::int64_t total_steps = 0;
  std::int64_t sparse_steps = 0;
  double sparse_speedup = 1.0;
  auto* s2d = app.add_subcommand(
      "s2d", "End-to-end speedup of a sparse-to-dense training schedule");
  s2d->add_option("--total-steps", total_steps, "Total training steps")
      ->required();
  s2d->add_option("--sparse-steps", sparse_steps, "Steps run with masks on")
      ->required();
  s2d->add_option("--speedup", sparse_speedup,
                  "Per-step speedup while sparse")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(scenario_path, format);
    if (table1_cmd->parsed())
      return cmd_analyze(scenario_path, format.empty() ? "table" : format);
    if (sweep->parsed()) return cmd_sweep(scenario_path, step);
    if (partition->parsed()) return cmd_partition(scenario_path, capacity);
    if (simcheck->parsed()) return cmd_simcheck(sim);
    if (s2d->parsed()) return cmd_s2d(total_steps, sparse_steps, sparse_speedup);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
