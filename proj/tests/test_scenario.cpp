#include <stdexcept>

#include "doctest.h"
#include "sparseflow/scenario.hpp"

using namespace sparseflow;

TEST_SUITE("scenario") {

TEST_CASE("defaults fill everything not specified") {
  Scenario s = parse_scenario(
      R"({"sparsity_levels":[0,0.5,0.875,0.95],"machine":"paper-kbk"})");
  CHECK(s == default_scenario());
  CHECK(s.graph.tokens == 2048);
  CHECK(s.graph.model_dim == 5120);
  CHECK(s.graph.ffn_dim == 20480);
  CHECK(s.graph.elem_bytes == 2);
  CHECK(s.graph.gelu_flops_per_elem == 20);
  CHECK(s.machine.weight_reuse == 64);
  CHECK(s.format == "table");

  CHECK(parse_scenario("{}") == default_scenario());
}

TEST_CASE("explicit machine objects convert decimal units") {
  Scenario s = parse_scenario(
      R"({"graph":{"tokens":2048},
          "machine":{"compute_tflops":300,"offchip_gbps":2000}})");
  CHECK(s.machine.compute_flops == 3e14);
  REQUIRE(s.machine.offchip_bw.has_value());
  CHECK(*s.machine.offchip_bw == 2e12);
  CHECK(s.machine.onchip_capacity == 1e9);
  CHECK(s.machine.weight_reuse == 64);
  CHECK(s.machine.name == "custom");
}

TEST_CASE("omitted bandwidth means unbounded") {
  Scenario s = parse_scenario(R"({"machine":{"compute_tflops":100}})");
  CHECK(!s.machine.offchip_bw.has_value());
  Scenario null_bw =
      parse_scenario(R"({"machine":{"offchip_gbps":null}})");
  CHECK(!null_bw.machine.offchip_bw.has_value());
}

TEST_CASE("sparsity levels are validated") {
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"sparsity_levels":[1.5]})"),
                       doctest::Contains("sparsity out of range"),
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario(R"({"sparsity_levels":[1.0]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario(R"({"sparsity_levels":[-0.1]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario(R"({"sparsity_levels":[]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario(R"({"sparsity_levels":["half"]})"),
                  std::invalid_argument);
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"graf":{}})"),
                       doctest::Contains("graf"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"graph":{"token":1}})"),
                       doctest::Contains("token"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_scenario(R"({"machine":{"compute_flops":300}})"),
      doctest::Contains("compute_flops"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"options":{"fomat":"csv"}})"),
                       doctest::Contains("fomat"), std::invalid_argument);
}

TEST_CASE("malformed json reports a position") {
  CHECK_THROWS_WITH_AS(parse_scenario("{\"graph\":"),
                       doctest::Contains("JSON"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario("[]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario(""), std::invalid_argument);
}

TEST_CASE("field types and ranges are checked") {
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"graph":{"tokens":0}})"),
                       doctest::Contains("tokens"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario(R"({"graph":{"tokens":2.5}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario(R"({"machine":{"compute_tflops":-1}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario(R"({"machine":{"weight_reuse":0}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario(R"({"machine":42})"),
                  std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"machine":"tpu"})"),
                       doctest::Contains("paper-kbk"),
                       std::invalid_argument);
}

TEST_CASE("options override machine and output settings") {
  Scenario s = parse_scenario(
      R"({"machine":"paper-kbk",
          "options":{"weight_reuse":32,"format":"markdown"}})");
  CHECK(s.machine.weight_reuse == 32);
  CHECK(s.format == "markdown");

  CHECK_THROWS_WITH_AS(parse_scenario(R"({"options":{"format":"html"}})"),
                       doctest::Contains("format"), std::invalid_argument);
}

TEST_CASE("render and parse round-trip") {
  Scenario presets = default_scenario();
  CHECK(parse_scenario(render_scenario(presets)) == presets);

  Scenario custom;
  custom.graph.tokens = 1024;
  custom.graph.ffn_dim = 8192;
  custom.machine = preset("custom");
  custom.machine.compute_flops = 123.5 * 1e12;
  custom.machine.offchip_bw = 1.5e12;
  custom.machine.weight_reuse = 16;
  custom.sparsity_levels = {0.0, 0.9};
  custom.format = "csv";
  CHECK(parse_scenario(render_scenario(custom)) == custom);

  // Bandwidth-unbounded machines survive the round trip too.
  Scenario unbounded = default_scenario();
  unbounded.machine = preset("paper-df");
  CHECK(parse_scenario(render_scenario(unbounded)) == unbounded);

  Scenario modified = default_scenario();
  modified.machine.offchip_bw.reset();  // no longer equal to its preset
  CHECK(parse_scenario(render_scenario(modified)) == modified);
}

TEST_CASE("scenario validation stands alone") {
  Scenario s = default_scenario();
  CHECK_NOTHROW(s.validate());
  s.sparsity_levels = {0.5, 1.2};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);

  s = default_scenario();
  s.format = "pdf";
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);

  s = default_scenario();
  s.graph.model_dim = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

}  // TEST_SUITE
