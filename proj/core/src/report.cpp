#include "sparseflow/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sparseflow/kbk.hpp"

namespace sparseflow {

namespace {

// std::to_chars is locale-independent by construction.
std::string fmt_fixed(double x, int digits) {
  char buf[64];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, digits);
  return std::string(buf, end);
}

std::string fmt_shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

// "0%", "50%", "87.5%": one decimal only when the percentage needs it.
std::string fmt_percent(double s) {
  double pct = s * 100.0;
  bool integral = std::fabs(pct - std::round(pct)) < 1e-9;
  return fmt_fixed(pct, integral ? 0 : 1) + "%";
}

// MB with one decimal, trimmed to "0" rather than "0.0" when whole-and-zero
// is the natural reading (spill of nothing).
std::string fmt_mb_short(double bytes) {
  std::string s = fmt_fixed(bytes / kMB, 1);
  if (s.size() > 2 && s.compare(s.size() - 2, 2, ".0") == 0)
    s.resize(s.size() - 2);
  return s;
}

const std::vector<std::string> kColumnNames = {
    "Sparsity",      "KBK BW (GB/s)", "DF BW (GB/s)", "DF on-chip (MB)",
    "Ideal speedup", "KBK speedup",   "DF speedup"};

std::vector<std::string> display_cells(const ReportRow& r) {
  return {fmt_percent(r.sparsity),
          fmt_fixed(r.kbk_bw / kGBps, 1),
          fmt_fixed(r.df_bw / kGBps, 1),
          fmt_fixed(static_cast<double>(r.df_onchip) / kMB, 1),
          fmt_fixed(r.ideal_speedup, 1),
          fmt_fixed(r.kbk_speedup, 2),
          fmt_fixed(r.df_speedup, 2)};
}

std::string csv_row(const ReportRow& r) {
  std::string out;
  out += fmt_shortest(r.sparsity);
  out += ',';
  out += fmt_shortest(r.kbk_bw / kGBps);
  out += ',';
  out += fmt_shortest(r.df_bw / kGBps);
  out += ',';
  out += fmt_shortest(static_cast<double>(r.df_onchip) / kMB);
  out += ',';
  out += fmt_shortest(r.ideal_speedup);
  out += ',';
  out += fmt_shortest(r.kbk_speedup);
  out += ',';
  out += fmt_shortest(r.df_speedup);
  return out;
}

std::string format_text_table(const ReportTable& t, bool markdown) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back(kColumnNames);
  for (const auto& r : t.rows) grid.push_back(display_cells(r));

  std::vector<std::size_t> width(kColumnNames.size(), 0);
  for (const auto& row : grid)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());

  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& row = grid[i];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (markdown) out += c == 0 ? "| " : " ";
      std::string pad(width[c] - row[c].size(), ' ');
      // Right-align numbers under their headers; headers left-aligned.
      if (i == 0)
        out += row[c] + pad;
      else
        out += pad + row[c];
      out += markdown ? " |" : (c + 1 < row.size() ? "  " : "");
    }
    out += '\n';
    if (markdown && i == 0) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out += c == 0 ? "|" : "";
        out += ' ' + std::string(width[c] - 1, '-') + ":";
        out += " |";
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace

ReportRow make_report_row(const GraphFamily& family, const MachineSpec& m,
                          double s) {
  Graph g = family(s);
  MachineSpec unbounded = m;
  unbounded.offchip_bw.reset();

  ReportRow row;
  row.sparsity = s;
  row.kbk_bw = kbk_bw_requirement(g, m);
  row.df_bw = df_bw_requirement(g, m);
  row.df_onchip = df_onchip_memory(g).total;
  row.ideal_speedup = 1.0 / (1.0 - s);
  row.kbk_speedup = kbk_speedup(family, m, s);
  row.df_speedup = df_speedup(family, unbounded, s);
  return row;
}

ReportTable make_report(const Scenario& s) {
  s.validate();
  GraphFamily family = [cfg = s.graph](double sp) { return cfg.build(sp); };
  std::vector<double> levels = s.sparsity_levels;
  std::sort(levels.begin(), levels.end());
  ReportTable t;
  for (double level : levels)
    t.rows.push_back(make_report_row(family, s.machine, level));
  return t;
}

ReportTable table1() { return make_report(default_scenario()); }

std::string format_report(const ReportTable& t, const std::string& format) {
  if (format == "table") return format_text_table(t, /*markdown=*/false);
  if (format == "markdown") return format_text_table(t, /*markdown=*/true);
  if (format == "csv") {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& r : t.rows) out += csv_row(r) + "\n";
    return out;
  }
  throw std::invalid_argument("format must be table, csv, or markdown");
}

std::string sweep_csv(const Scenario& scenario, double step) {
  if (!(step > 0.0 && step < 1.0))
    throw std::invalid_argument("step must be in (0,1)");
  Scenario s = scenario;
  s.sparsity_levels.clear();
  for (std::int64_t k = 0; k * step < 1.0; ++k)
    s.sparsity_levels.push_back(k * step);
  return format_report(make_report(s), "csv");
}

std::string render_section_plan(const Graph& g, const SectionPlan& plan) {
  std::string out;
  out += std::to_string(plan.sections.size());
  out += plan.sections.size() == 1 ? " section" : " sections";
  out += ", spill " + fmt_mb_short(static_cast<double>(plan.spill_traffic)) +
         " MB\n";
  for (std::size_t i = 0; i < plan.sections.size(); ++i) {
    const Section& sec = plan.sections[i];
    out += "  section " + std::to_string(i + 1) + ": ops " +
           std::to_string(sec.first_op) + ".." + std::to_string(sec.last_op) +
           " (";
    for (std::size_t op = sec.first_op; op <= sec.last_op; ++op) {
      if (op != sec.first_op) out += ", ";
      if (const auto* ew = std::get_if<ElementwiseOp>(&g.ops[op]))
        out += ew->name;
      else
        out += "gemm";
    }
    out += "), memory " +
           fmt_mb_short(static_cast<double>(sec.memory.total)) + " MB\n";
  }
  if (!plan.spilled_edges.empty()) {
    out += "  spilled edges:";
    for (std::size_t e : plan.spilled_edges) out += " " + std::to_string(e);
    out += '\n';
  }
  return out;
}

}  // namespace sparseflow
