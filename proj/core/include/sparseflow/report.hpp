// Report assembly and rendering: the reference table, scenario reports,
// sparsity sweeps, and section-plan summaries, in table/CSV/markdown form.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparseflow/dataflow.hpp"
#include "sparseflow/graph.hpp"
#include "sparseflow/machine.hpp"
#include "sparseflow/scenario.hpp"

namespace sparseflow {

/// One sparsity level evaluated under both execution models. Stored in SI
/// units (bytes/s, bytes); renderers convert to GB/s and MB for display.
struct ReportRow {
  double sparsity = 0.0;
  double kbk_bw = 0.0;           // bytes/s to keep KBK GEMMs busy
  double df_bw = 0.0;            // bytes/s to keep DF GEMMs busy
  std::int64_t df_onchip = 0;    // bytes resident under DF
  double ideal_speedup = 1.0;    // 1/(1-s)
  double kbk_speedup = 1.0;      // vs dense, same machine
  double df_speedup = 1.0;       // vs dense, pipeline accounting
};

struct ReportTable {
  std::vector<ReportRow> rows;
};

/// Evaluates one sparsity level. KBK columns use the machine as given; DF
/// speedup uses a bandwidth-unconstrained copy, since the DF columns answer
/// "what bandwidth would this pipeline need" rather than assume one.
ReportRow make_report_row(const GraphFamily& family, const MachineSpec& m,
                          double s);

ReportTable make_report(const Scenario& s);

/// The built-in reference table: default FFN scenario at {0, 0.5, 0.875,
/// 0.95}.
ReportTable table1();

inline constexpr const char* kCsvHeader =
    "sparsity,kbk_bw_gbps,df_bw_gbps,df_onchip_mb,ideal_speedup,kbk_speedup,"
    "df_speedup";

/// Renders in "table" (aligned text), "csv" (kCsvHeader columns, full
/// precision), or "markdown" (pipe table). Output is locale-independent.
std::string format_report(const ReportTable& t, const std::string& format);

/// CSV report over the grid {0, step, 2*step, ...} below 1. Requires
/// 0 < step < 1.
std::string sweep_csv(const Scenario& scenario, double step);

/// Human-readable section plan: header "<N> section(s), spill <MB> MB",
/// then one line per section with its op range and memory.
std::string render_section_plan(const Graph& g, const SectionPlan& plan);

}  // namespace sparseflow
