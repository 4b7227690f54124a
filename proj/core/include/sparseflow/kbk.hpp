// Kernel-by-kernel execution model: each operator runs alone at its roofline
// time, intermediates round-trip through off-chip memory, and the chain
// executes strictly sequentially.
#pragma once

#include <cstddef>
#include <vector>

#include "sparseflow/graph.hpp"
#include "sparseflow/machine.hpp"

namespace sparseflow {

enum class Bound { Compute, Memory };

struct KbkOpReport {
  std::size_t op_index = 0;
  double compute_time = 0.0;  // seconds at peak FLOP/s
  double traffic_time = 0.0;  // seconds at peak off-chip bandwidth
  double op_time = 0.0;       // max of the two
  Bound bound = Bound::Compute;
};

/// Roofline time of one operator. With unbounded off-chip bandwidth the
/// traffic time is zero; a zero-FLOP operator on such a machine has no
/// defined time and raises std::domain_error.
KbkOpReport kbk_op_time(const Graph& g, std::size_t op_index,
                        const MachineSpec& m);

std::vector<KbkOpReport> kbk_op_reports(const Graph& g, const MachineSpec& m);

/// Sum of per-operator roofline times over the chain.
double kbk_total_time(const Graph& g, const MachineSpec& m);

/// Minimum off-chip bandwidth (bytes/s) that keeps the GEMM compute resources
/// fully utilized: total KBK traffic of all operators divided by the GEMM-only
/// compute time. Requires at least one GEMM in the chain.
double kbk_bw_requirement(const Graph& g, const MachineSpec& m);

/// Total-time ratio of the dense instance over the instance at sparsity s.
double kbk_speedup(const GraphFamily& family, const MachineSpec& m, double s);

/// One execution-model evaluation at a fixed sparsity level.
struct ScenarioResult {
  double sparsity = 0.0;
  double bw_required = 0.0;       // bytes/s
  double onchip_bytes = 0.0;      // 0 for KBK
  double total_time = 0.0;        // seconds
  double speedup_vs_dense = 1.0;
  std::vector<KbkOpReport> per_op;
};

ScenarioResult kbk_scenario(const GraphFamily& family, const MachineSpec& m,
                            double s);

}  // namespace sparseflow
