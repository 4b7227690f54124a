// Abstract machine description: peak compute throughput, off-chip bandwidth,
// on-chip capacity, and the weight-reuse factor shared by both execution
// models. Named presets carry the reference accelerator assumptions.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sparseflow {

// Decimal units used by scenario files and reports (839 MB = 838,860,800 B).
inline constexpr double kTflops = 1e12;  // FLOP/s per TFLOP/s
inline constexpr double kGBps = 1e9;     // bytes/s per GB/s
inline constexpr double kMB = 1e6;       // bytes per MB

struct MachineSpec {
  double compute_flops = 0.0;            // FLOP/s
  std::optional<double> offchip_bw;      // bytes/s; nullopt = unbounded
  double onchip_capacity = 0.0;          // bytes
  std::int64_t weight_reuse = 1;         // weight fetches amortized over this
  std::string name = "custom";

  bool operator==(const MachineSpec&) const = default;
};

/// Known presets:
///   "paper-kbk"  300 TFLOP/s, 2 TB/s off-chip, no on-chip pipeline memory
///   "paper-df"   300 TFLOP/s, unbounded off-chip (speedup accounting is
///                compute-side), 1 GB on-chip
///   "custom"     300 TFLOP/s, 2 TB/s, 1 GB on-chip; a base for overrides
/// Throws std::invalid_argument for unknown names, listing the valid ones.
MachineSpec preset(const std::string& name);

std::vector<std::string> preset_names();

/// Throws std::invalid_argument naming the violated field.
void validate(const MachineSpec& m);

}  // namespace sparseflow
