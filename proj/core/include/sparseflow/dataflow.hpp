// Dataflow execution model: all operators of a section run as one fused
// on-chip pipeline, exchanging tiles through double buffers. Weights and
// every double-buffered edge are resident on chip; only chain boundaries
// (and spilled inter-section edges) touch off-chip memory.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sparseflow/graph.hpp"
#include "sparseflow/kbk.hpp"
#include "sparseflow/machine.hpp"

namespace sparseflow {

struct EdgeBufferReport {
  std::size_t edge_index = 0;
  std::int64_t bytes = 0;  // 2x the tensor bytes: double buffered
};

struct DfMemoryReport {
  std::int64_t weight_bytes = 0;  // stored bytes of all GEMM weights
  std::int64_t buffer_bytes = 0;  // sum over edges of 2x tensor bytes
  std::int64_t total = 0;         // weight_bytes + buffer_bytes
  std::vector<EdgeBufferReport> per_edge;
};

/// On-chip capacity needed to hold the whole chain as one pipeline.
DfMemoryReport df_onchip_memory(const Graph& g);

/// Pipeline throughput time: aggregate FLOPs of all operators over aggregate
/// compute throughput (compute resources are shared proportionally between
/// stages). With bounded off-chip bandwidth the result is the max of that and
/// the off-chip traffic time (boundary tensors plus amortized weights).
double df_pipeline_time(const Graph& g, const MachineSpec& m);

/// Off-chip bytes per chain invocation under DF: boundary traffic plus
/// stored weights amortized over the weight-reuse factor.
double df_offchip_traffic(const Graph& g, std::int64_t weight_reuse);

/// Minimum off-chip bandwidth for full GEMM utilization under DF. Same
/// GEMM-only denominator as the KBK requirement.
double df_bw_requirement(const Graph& g, const MachineSpec& m);

/// Pipeline-time ratio of the dense instance over the instance at sparsity s.
double df_speedup(const GraphFamily& family, const MachineSpec& m, double s);

ScenarioResult df_scenario(const GraphFamily& family, const MachineSpec& m,
                           double s);

/// A contiguous run of operators co-resident on chip.
struct Section {
  std::size_t first_op = 0;
  std::size_t last_op = 0;  // inclusive
  DfMemoryReport memory;
};

struct SectionPlan {
  std::vector<Section> sections;
  std::vector<std::size_t> spilled_edges;  // inter-section edge indices
  std::int64_t spill_traffic = 0;          // each spilled edge: 1 write + 1 read

  /// Off-chip bytes per invocation including spills.
  double total_offchip_traffic(const Graph& g,
                               std::int64_t weight_reuse) const;
};

/// On-chip memory of a single section [first_op, last_op]: its GEMM weights
/// plus 2x every adjacent edge. Spilled boundary edges still occupy a double
/// buffer for off-chip staging.
DfMemoryReport df_section_memory(const Graph& g, std::size_t first_op,
                                 std::size_t last_op);

/// Partitions the chain into contiguous sections, each fitting in capacity,
/// minimizing spill traffic; ties broken by fewest sections, then earliest
/// boundaries. Exact dynamic program over chain prefixes, O(n^2) transitions.
/// Throws std::domain_error naming the operator if a single op exceeds
/// capacity on its own.
SectionPlan partition_chain(const Graph& g, double capacity_bytes);

}  // namespace sparseflow
