#include "sparseflow/machine.hpp"

#include <stdexcept>

namespace sparseflow {

MachineSpec preset(const std::string& name) {
  if (name == "paper-kbk")
    return {300.0 * kTflops, 2000.0 * kGBps, 0.0, 64, "paper-kbk"};
  if (name == "paper-df")
    return {300.0 * kTflops, std::nullopt, 1e9, 64, "paper-df"};
  if (name == "custom")
    return {300.0 * kTflops, 2000.0 * kGBps, 1e9, 64, "custom"};

  std::string valid;
  for (const auto& n : preset_names()) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw std::invalid_argument("unknown machine preset \"" + name +
                              "\" (valid: " + valid + ")");
}

std::vector<std::string> preset_names() {
  return {"paper-kbk", "paper-df", "custom"};
}

void validate(const MachineSpec& m) {
  if (!(m.compute_flops > 0.0))
    throw std::invalid_argument("machine: compute_flops must be > 0");
  if (m.offchip_bw && !(*m.offchip_bw > 0.0))
    throw std::invalid_argument("machine: offchip_bw must be > 0 when bounded");
  if (m.onchip_capacity < 0.0)
    throw std::invalid_argument("machine: onchip_capacity must be >= 0");
  if (m.weight_reuse < 1)
    throw std::invalid_argument("machine: weight_reuse must be >= 1");
}

}  // namespace sparseflow
