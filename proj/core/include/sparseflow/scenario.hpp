// Scenario files: a small strict-schema JSON format that selects the graph
// family, the machine, the sparsity levels to evaluate, and output options.
#pragma once

#include <string>
#include <vector>

#include "sparseflow/graph.hpp"
#include "sparseflow/machine.hpp"

namespace sparseflow {

struct Scenario {
  FfnConfig graph;
  MachineSpec machine = preset("paper-kbk");
  std::vector<double> sparsity_levels{0.0, 0.5, 0.875, 0.95};
  std::string format = "table";  // "table", "csv", or "markdown"

  /// Throws std::invalid_argument naming the violated field.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

/// The built-in reference scenario: default FFN graph, "paper-kbk" machine,
/// sparsity levels {0, 0.5, 0.875, 0.95}.
Scenario default_scenario();

/// Parses a scenario document. Schema (all keys optional, unknowns rejected):
///   {
///     "graph":   {"tokens", "model_dim", "ffn_dim", "elem_bytes",
///                 "gelu_flops_per_elem"},
///     "machine": "preset-name" | {"name", "compute_tflops", "offchip_gbps",
///                 "onchip_mb", "weight_reuse"},   // no offchip_gbps or null
///                                                 // means unbounded
///     "sparsity_levels": [fractions in [0,1)],
///     "options": {"weight_reuse", "format"}
///   }
/// Throws std::invalid_argument with the location (malformed JSON) or the
/// offending key/field name (schema or invariant violation).
Scenario parse_scenario(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

/// Inverse of parse_scenario: parse_scenario(render_scenario(s)) == s.
std::string render_scenario(const Scenario& s);

}  // namespace sparseflow
