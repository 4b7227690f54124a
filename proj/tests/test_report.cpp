#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "sparseflow/report.hpp"

using namespace sparseflow;

namespace {

doctest::Approx near(double x) { return doctest::Approx(x).epsilon(1e-12); }

// Split CSV text into cells for numeric checks.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    rows.emplace_back();
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) rows.back().push_back(cell);
  }
  return rows;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("reference table values") {
  ReportTable t = table1();
  REQUIRE(t.rows.size() == 4);

  const ReportRow& dense = t.rows[0];
  CHECK(dense.sparsity == 0.0);
  CHECK(dense.kbk_bw == near(134'124'755'859.375));
  CHECK(dense.df_bw == near(16'937'255'859.375));
  CHECK(dense.df_onchip == 838'860'800);
  CHECK(dense.ideal_speedup == 1.0);
  CHECK(dense.kbk_speedup == 1.0);
  CHECK(dense.df_speedup == 1.0);

  const ReportRow& half = t.rows[1];
  CHECK(half.kbk_bw == near(265'960'693'359.375));
  CHECK(half.df_bw == near(31'585'693'359.375));
  CHECK(half.df_onchip == 629'145'600);
  CHECK(half.ideal_speedup == 2.0);
  CHECK(half.kbk_speedup == near(1.944649446494465));
  CHECK(half.df_speedup == near(1.9980506822612085));

  const ReportRow& eighth = t.rows[2];
  CHECK(eighth.kbk_bw == near(1'056'976'318'359.375));
  CHECK(eighth.df_bw == near(119'476'318'359.375));
  CHECK(eighth.df_onchip == 471'859'200);
  CHECK(eighth.ideal_speedup == 8.0);
  CHECK(eighth.kbk_speedup == near(6.670886075949368));
  CHECK(eighth.df_speedup == near(7.945736434108527));

  const ReportRow& last = t.rows[3];
  CHECK(last.kbk_bw == near(2'639'007'568'359.3726));
  CHECK(last.df_bw == near(295'257'568'359.3747));
  CHECK(last.df_onchip == 440'401'920);
  CHECK(last.ideal_speedup == near(20.0));
  CHECK(last.kbk_speedup == near(12.980295566502456));
  CHECK(last.df_speedup == near(19.63601532567048));
}

TEST_CASE("rows keep the ideal-speedup invariant") {
  ReportTable t = table1();
  for (const auto& r : t.rows)
    CHECK(r.ideal_speedup == 1.0 / (1.0 - r.sparsity));
}

TEST_CASE("levels are reported in ascending sparsity order") {
  Scenario s = default_scenario();
  s.sparsity_levels = {0.875, 0.0, 0.5};
  ReportTable t = make_report(s);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0].sparsity == 0.0);
  CHECK(t.rows[1].sparsity == 0.5);
  CHECK(t.rows[2].sparsity == 0.875);
}

TEST_CASE("table rendering shows the headline figures") {
  std::string text = format_report(table1(), "table");
  CHECK(text.find("Sparsity") != std::string::npos);
  CHECK(text.find("87.5%") != std::string::npos);
  CHECK(text.find("1057.0") != std::string::npos);
  CHECK(text.find("2639.0") != std::string::npos);
  CHECK(text.find("19.64") != std::string::npos);
  CHECK(text.find("838.9") != std::string::npos);
}

TEST_CASE("markdown rendering is a pipe table") {
  std::string text = format_report(table1(), "markdown");
  CHECK(text.find("| Sparsity |") != std::string::npos);
  CHECK(text.find("---") != std::string::npos);
  CHECK(text.find("12.98 |") != std::string::npos);
  // Every line of a pipe table starts and ends with a pipe.
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    REQUIRE(!line.empty());
    CHECK(line.front() == '|');
    CHECK(line.back() == '|');
  }
}

TEST_CASE("csv rendering is full precision and fixed order") {
  std::string text = format_report(table1(), "csv");
  auto rows = parse_csv(text);
  REQUIRE(rows.size() == 5);
  REQUIRE(rows[0].size() == 7);
  CHECK(text.substr(0, text.find('\n')) == kCsvHeader);
  CHECK(rows[0][0] == "sparsity");
  CHECK(rows[0][6] == "df_speedup");

  // Values parse back to the exact doubles the model produced.
  CHECK(std::stod(rows[1][1]) == near(134.124755859375));
  CHECK(std::stod(rows[4][6]) == near(19.63601532567048));
  CHECK(std::stod(rows[4][3]) == near(440.40192));

  CHECK_THROWS_AS(format_report(table1(), "html"), std::invalid_argument);
}

TEST_CASE("sweep covers the whole grid below one") {
  Scenario s = default_scenario();
  auto rows = parse_csv(sweep_csv(s, 0.25));
  REQUIRE(rows.size() == 5);  // header + 0, 0.25, 0.5, 0.75
  CHECK(std::stod(rows[1][0]) == 0.0);
  CHECK(std::stod(rows[4][0]) == 0.75);

  // s = 0 rows carry exactly unit speedups.
  CHECK(rows[1][5] == "1");
  CHECK(rows[1][6] == "1");

  auto fine = parse_csv(sweep_csv(s, 0.05));
  CHECK(fine.size() == 21);

  CHECK_THROWS_AS(sweep_csv(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sweep_csv(s, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sweep_csv(s, -0.5), std::invalid_argument);
}

TEST_CASE("sweep bandwidth columns rise monotonically") {
  auto rows = parse_csv(sweep_csv(default_scenario(), 0.1));
  REQUIRE(rows.size() == 11);
  double prev_kbk = 0.0, prev_df = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double kbk = std::stod(rows[i][1]);
    double df = std::stod(rows[i][2]);
    CHECK(kbk > prev_kbk);
    CHECK(df > prev_df);
    CHECK(df < kbk);
    prev_kbk = kbk;
    prev_df = df;
  }
}

TEST_CASE("section plans render sections and spill") {
  Graph g = FfnConfig{}.build(0.0);

  std::string whole = render_section_plan(g, partition_chain(g, 1e9));
  CHECK(whole.find("1 section, spill 0 MB") == 0);
  CHECK(whole.find("ops 0..2 (gemm, gelu, gemm)") != std::string::npos);
  CHECK(whole.find("838.9 MB") != std::string::npos);

  std::string split = render_section_plan(g, partition_chain(g, 5e8));
  CHECK(split.find("3 sections, spill 335.5 MB") == 0);
  CHECK(split.find("section 2: ops 1..1 (gelu), memory 335.5 MB") !=
        std::string::npos);
  CHECK(split.find("spilled edges: 1 2") != std::string::npos);
}

TEST_CASE("report rows honor the scenario machine") {
  Scenario s = default_scenario();
  s.machine.weight_reuse = 1;  // no amortization: KBK BW rises sharply
  ReportTable t = make_report(s);
  ReportTable base = table1();
  CHECK(t.rows[0].kbk_bw > base.rows[0].kbk_bw);
  // On-chip residency is a graph property, not a machine one.
  CHECK(t.rows[0].df_onchip == base.rows[0].df_onchip);
}

}  // TEST_SUITE
