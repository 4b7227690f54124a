#include <stdexcept>

#include "doctest.h"
#include "sparseflow/machine.hpp"

using namespace sparseflow;

TEST_SUITE("machine") {

TEST_CASE("presets carry the reference assumptions") {
  MachineSpec kbk = preset("paper-kbk");
  CHECK(kbk.compute_flops == 3e14);
  REQUIRE(kbk.offchip_bw.has_value());
  CHECK(*kbk.offchip_bw == 2e12);
  CHECK(kbk.onchip_capacity == 0.0);
  CHECK(kbk.weight_reuse == 64);

  MachineSpec df = preset("paper-df");
  CHECK(df.compute_flops == 3e14);
  CHECK(!df.offchip_bw.has_value());
  CHECK(df.onchip_capacity == 1e9);
  CHECK(df.weight_reuse == 64);

  MachineSpec custom = preset("custom");
  CHECK(custom.compute_flops == 3e14);
  REQUIRE(custom.offchip_bw.has_value());
  CHECK(*custom.offchip_bw == 2e12);
  CHECK(custom.onchip_capacity == 1e9);

  for (const auto& name : preset_names()) CHECK(preset(name).name == name);
}

TEST_CASE("unknown preset lists the valid names") {
  CHECK_THROWS_WITH_AS(preset("gpu"), doctest::Contains("paper-kbk"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(preset(""), doctest::Contains("custom"),
                       std::invalid_argument);
}

TEST_CASE("validation names the violated field") {
  MachineSpec m = preset("custom");
  CHECK_NOTHROW(validate(m));

  m.compute_flops = 0.0;
  CHECK_THROWS_WITH_AS(validate(m), doctest::Contains("compute_flops"),
                       std::invalid_argument);

  m = preset("custom");
  m.offchip_bw = 0.0;
  CHECK_THROWS_WITH_AS(validate(m), doctest::Contains("offchip_bw"),
                       std::invalid_argument);

  m = preset("custom");
  m.onchip_capacity = -1.0;
  CHECK_THROWS_WITH_AS(validate(m), doctest::Contains("onchip_capacity"),
                       std::invalid_argument);

  m = preset("custom");
  m.weight_reuse = 0;
  CHECK_THROWS_WITH_AS(validate(m), doctest::Contains("weight_reuse"),
                       std::invalid_argument);

  // Unbounded bandwidth is a valid configuration, not a missing field.
  m = preset("custom");
  m.offchip_bw.reset();
  CHECK_NOTHROW(validate(m));
}

TEST_CASE("specs compare by value") {
  CHECK(preset("paper-kbk") == preset("paper-kbk"));
  CHECK(preset("paper-kbk") != preset("paper-df"));
  MachineSpec m = preset("custom");
  m.weight_reuse = 32;
  CHECK(m != preset("custom"));
}

}  // TEST_SUITE
