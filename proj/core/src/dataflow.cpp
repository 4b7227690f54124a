#include "sparseflow/dataflow.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace sparseflow {

DfMemoryReport df_onchip_memory(const Graph& g) {
  if (g.ops.empty() && g.edges.empty()) return {};
  return df_section_memory(g, 0, g.ops.empty() ? 0 : g.ops.size() - 1);
}

DfMemoryReport df_section_memory(const Graph& g, std::size_t first_op,
                                 std::size_t last_op) {
  DfMemoryReport r;
  if (!g.ops.empty()) {
    if (last_op >= g.ops.size() || first_op > last_op)
      throw std::out_of_range("df_section_memory: bad op range");
    for (std::size_t i = first_op; i <= last_op; ++i)
      if (const auto* gm = std::get_if<GemmOp>(&g.ops[i]))
        r.weight_bytes += gm->weight.stored_bytes();
  }
  // Edges adjacent to the section, inclusive of its off-chip staging edges.
  const std::size_t edge_end = g.ops.empty() ? 0 : last_op + 1;
  for (std::size_t e = first_op; e <= edge_end && e < g.edges.size(); ++e) {
    std::int64_t bytes = 2 * g.edges[e].tensor.dense_bytes();
    r.per_edge.push_back({e, bytes});
    r.buffer_bytes += bytes;
  }
  r.total = r.weight_bytes + r.buffer_bytes;
  return r;
}

double df_offchip_traffic(const Graph& g, std::int64_t weight_reuse) {
  if (weight_reuse < 1)
    throw std::invalid_argument("df_offchip_traffic: weight_reuse must be >= 1");
  return static_cast<double>(graph_boundary_traffic(g)) +
         static_cast<double>(graph_weight_stored_bytes(g)) /
             static_cast<double>(weight_reuse);
}

double df_pipeline_time(const Graph& g, const MachineSpec& m) {
  validate(m);
  const double compute_time = graph_flops(g) / m.compute_flops;
  if (!m.offchip_bw) return compute_time;
  const double traffic_time =
      df_offchip_traffic(g, m.weight_reuse) / *m.offchip_bw;
  return std::max(compute_time, traffic_time);
}

double df_bw_requirement(const Graph& g, const MachineSpec& m) {
  validate(m);
  const double gemm_flops = graph_gemm_flops(g);
  if (gemm_flops <= 0.0)
    throw std::domain_error(
        "df_bw_requirement: bandwidth requirement undefined for a chain "
        "without GEMM operators");
  const double gemm_time = gemm_flops / m.compute_flops;
  return df_offchip_traffic(g, m.weight_reuse) / gemm_time;
}

double df_speedup(const GraphFamily& family, const MachineSpec& m, double s) {
  if (s < 0.0 || s >= 1.0)
    throw std::invalid_argument("df_speedup: sparsity must be in [0, 1)");
  return df_pipeline_time(family(0.0), m) / df_pipeline_time(family(s), m);
}

ScenarioResult df_scenario(const GraphFamily& family, const MachineSpec& m,
                           double s) {
  Graph g = family(s);
  ScenarioResult r;
  r.sparsity = s;
  r.bw_required = df_bw_requirement(g, m);
  r.onchip_bytes = static_cast<double>(df_onchip_memory(g).total);
  r.total_time = df_pipeline_time(g, m);
  r.speedup_vs_dense = df_pipeline_time(family(0.0), m) / r.total_time;
  return r;
}

double SectionPlan::total_offchip_traffic(const Graph& g,
                                          std::int64_t weight_reuse) const {
  return df_offchip_traffic(g, weight_reuse) +
         static_cast<double>(spill_traffic);
}

namespace {

// DP state for one chain prefix: best refers to (spill, section count,
// lexicographically earliest boundary list), in that order.
struct PrefixBest {
  std::int64_t spill = std::numeric_limits<std::int64_t>::max();
  std::size_t sections = 0;
  std::vector<std::size_t> boundaries;  // edge indices splitting the prefix
  bool reachable = false;
};

bool improves(std::int64_t spill, std::size_t sections,
              const std::vector<std::size_t>& boundaries,
              const PrefixBest& incumbent) {
  if (!incumbent.reachable) return true;
  if (spill != incumbent.spill) return spill < incumbent.spill;
  if (sections != incumbent.sections) return sections < incumbent.sections;
  return boundaries < incumbent.boundaries;
}

}  // namespace

SectionPlan partition_chain(const Graph& g, double capacity_bytes) {
  if (!(capacity_bytes > 0.0))
    throw std::invalid_argument("partition_chain: capacity must be > 0");

  const std::size_t n = g.ops.size();
  if (n == 0) return {};

  // Prefix sums for O(1) section memory: weights over ops, buffers over edges.
  std::vector<std::int64_t> wsum(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    wsum[i + 1] = wsum[i];
    if (const auto* gm = std::get_if<GemmOp>(&g.ops[i]))
      wsum[i + 1] += gm->weight.stored_bytes();
  }
  std::vector<std::int64_t> bsum(g.edges.size() + 1, 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    bsum[e + 1] = bsum[e] + 2 * g.edges[e].tensor.dense_bytes();

  // Ops [j, i) with edges j..i inclusive.
  auto section_mem = [&](std::size_t j, std::size_t i) {
    return (wsum[i] - wsum[j]) + (bsum[i + 1] - bsum[j]);
  };

  std::vector<PrefixBest> best(n + 1);
  best[0] = {0, 0, {}, true};

  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!best[j].reachable) continue;
      if (static_cast<double>(section_mem(j, i)) > capacity_bytes) continue;
      const std::int64_t spill =
          best[j].spill + (j > 0 ? 2 * g.edges[j].tensor.dense_bytes() : 0);
      const std::size_t sections = best[j].sections + 1;
      std::vector<std::size_t> boundaries = best[j].boundaries;
      if (j > 0) boundaries.push_back(j);
      if (improves(spill, sections, boundaries, best[i])) {
        best[i] = {spill, sections, std::move(boundaries), true};
      }
    }
  }

  if (!best[n].reachable) {
    for (std::size_t i = 0; i < n; ++i)
      if (static_cast<double>(section_mem(i, i + 1)) > capacity_bytes)
        throw std::domain_error("partition_chain: op " + std::to_string(i) +
                                " exceeds capacity on its own");
    throw std::logic_error("partition_chain: no feasible partition");
  }

  SectionPlan plan;
  plan.spill_traffic = best[n].spill;
  plan.spilled_edges = best[n].boundaries;

  std::size_t start = 0;
  auto close_section = [&](std::size_t end) {  // ops [start, end)
    Section s;
    s.first_op = start;
    s.last_op = end - 1;
    s.memory = df_section_memory(g, s.first_op, s.last_op);
    plan.sections.push_back(std::move(s));
    start = end;
  };
  for (std::size_t b : best[n].boundaries) close_section(b);
  close_section(n);
  return plan;
}

}  // namespace sparseflow
