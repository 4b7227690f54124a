#include "sparseflow/kbk.hpp"

#include <algorithm>
#include <stdexcept>

namespace sparseflow {

KbkOpReport kbk_op_time(const Graph& g, std::size_t op_index,
                        const MachineSpec& m) {
  validate(m);
  if (op_index >= g.ops.size())
    throw std::out_of_range("kbk_op_time: op index out of range");

  const OpNode& op = g.ops[op_index];
  KbkOpReport r;
  r.op_index = op_index;

  const double flops = op_flops(op, g.tokens_per_tile);
  r.compute_time = flops / m.compute_flops;
  if (m.offchip_bw) {
    r.traffic_time =
        op_kbk_traffic(op, g.tokens_per_tile, m.weight_reuse).total() /
        *m.offchip_bw;
  } else {
    if (flops == 0.0)
      throw std::domain_error(
          "kbk_op_time: zero-FLOP operator with unbounded off-chip bandwidth "
          "has no defined time");
    r.traffic_time = 0.0;
  }
  r.op_time = std::max(r.compute_time, r.traffic_time);
  r.bound = r.compute_time >= r.traffic_time ? Bound::Compute : Bound::Memory;
  return r;
}

std::vector<KbkOpReport> kbk_op_reports(const Graph& g, const MachineSpec& m) {
  std::vector<KbkOpReport> reports;
  reports.reserve(g.ops.size());
  for (std::size_t i = 0; i < g.ops.size(); ++i)
    reports.push_back(kbk_op_time(g, i, m));
  return reports;
}

double kbk_total_time(const Graph& g, const MachineSpec& m) {
  validate(m);
  double total = 0.0;
  for (std::size_t i = 0; i < g.ops.size(); ++i)
    total += kbk_op_time(g, i, m).op_time;
  return total;
}

double kbk_bw_requirement(const Graph& g, const MachineSpec& m) {
  validate(m);
  const double gemm_flops = graph_gemm_flops(g);
  if (gemm_flops <= 0.0)
    throw std::domain_error(
        "kbk_bw_requirement: bandwidth requirement undefined for a chain "
        "without GEMM operators");
  const double gemm_time = gemm_flops / m.compute_flops;
  return kbk_total_traffic(g, m.weight_reuse) / gemm_time;
}

double kbk_speedup(const GraphFamily& family, const MachineSpec& m, double s) {
  if (s < 0.0 || s >= 1.0)
    throw std::invalid_argument("kbk_speedup: sparsity must be in [0, 1)");
  return kbk_total_time(family(0.0), m) / kbk_total_time(family(s), m);
}

ScenarioResult kbk_scenario(const GraphFamily& family, const MachineSpec& m,
                            double s) {
  Graph g = family(s);
  ScenarioResult r;
  r.sparsity = s;
  r.bw_required = kbk_bw_requirement(g, m);
  r.onchip_bytes = 0.0;
  r.per_op = kbk_op_reports(g, m);
  r.total_time = 0.0;
  for (const auto& op : r.per_op) r.total_time += op.op_time;
  r.speedup_vs_dense = kbk_total_time(family(0.0), m) / r.total_time;
  return r;
}

}  // namespace sparseflow
