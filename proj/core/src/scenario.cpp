#include "sparseflow/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sparseflow {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> known) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok)
      throw std::invalid_argument("unknown key \"" + where + item.key() +
                                  "\" in scenario");
  }
}

std::int64_t get_pos_int(const json& obj, const std::string& where,
                         const char* key, std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
    throw std::invalid_argument("\"" + where + key +
                                "\" must be a positive integer");
  return v.get<std::int64_t>();
}

double get_pos_number(const json& obj, const std::string& where,
                      const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number() || v.get<double>() <= 0.0)
    throw std::invalid_argument("\"" + where + key +
                                "\" must be a positive number");
  return v.get<double>();
}

double get_nonneg_number(const json& obj, const std::string& where,
                         const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number() || v.get<double>() < 0.0)
    throw std::invalid_argument("\"" + where + key +
                                "\" must be a non-negative number");
  return v.get<double>();
}

MachineSpec parse_machine(const json& j) {
  if (j.is_string()) return preset(j.get<std::string>());
  if (!j.is_object())
    throw std::invalid_argument(
        "\"machine\" must be a preset name or an object");
  reject_unknown_keys(j, "machine.",
                      {"name", "compute_tflops", "offchip_gbps", "onchip_mb",
                       "weight_reuse"});
  MachineSpec m;
  m.name = "custom";
  if (j.contains("name")) {
    if (!j.at("name").is_string())
      throw std::invalid_argument("\"machine.name\" must be a string");
    m.name = j.at("name").get<std::string>();
  }
  m.compute_flops = get_pos_number(j, "machine.", "compute_tflops", 300.0) *
                    kTflops;
  if (j.contains("offchip_gbps") && !j.at("offchip_gbps").is_null())
    m.offchip_bw = get_pos_number(j, "machine.", "offchip_gbps", 0.0) * kGBps;
  m.onchip_capacity =
      get_nonneg_number(j, "machine.", "onchip_mb", 1000.0) * kMB;
  m.weight_reuse = get_pos_int(j, "machine.", "weight_reuse", 64);
  return m;
}

}  // namespace

void Scenario::validate() const {
  if (graph.tokens < 1 || graph.model_dim < 1 || graph.ffn_dim < 1 ||
      graph.elem_bytes < 1 || graph.gelu_flops_per_elem < 0)
    throw std::invalid_argument("graph dimensions must be positive");
  sparseflow::validate(machine);
  if (sparsity_levels.empty())
    throw std::invalid_argument("sparsity_levels must be non-empty");
  for (double s : sparsity_levels)
    if (!(s >= 0.0 && s < 1.0))
      throw std::invalid_argument("sparsity out of range [0,1)");
  if (format != "table" && format != "csv" && format != "markdown")
    throw std::invalid_argument("format must be table, csv, or markdown");
}

Scenario default_scenario() { return Scenario{}; }

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario is not valid JSON: ") +
                                e.what());
  }
  if (!j.is_object())
    throw std::invalid_argument("scenario root must be a JSON object");
  reject_unknown_keys(j, "",
                      {"graph", "machine", "sparsity_levels", "options"});

  Scenario s;
  if (j.contains("graph")) {
    const json& g = j.at("graph");
    if (!g.is_object())
      throw std::invalid_argument("\"graph\" must be an object");
    reject_unknown_keys(g, "graph.",
                        {"tokens", "model_dim", "ffn_dim", "elem_bytes",
                         "gelu_flops_per_elem"});
    s.graph.tokens = get_pos_int(g, "graph.", "tokens", s.graph.tokens);
    s.graph.model_dim =
        get_pos_int(g, "graph.", "model_dim", s.graph.model_dim);
    s.graph.ffn_dim = get_pos_int(g, "graph.", "ffn_dim", s.graph.ffn_dim);
    s.graph.elem_bytes =
        get_pos_int(g, "graph.", "elem_bytes", s.graph.elem_bytes);
    s.graph.gelu_flops_per_elem = get_pos_int(
        g, "graph.", "gelu_flops_per_elem", s.graph.gelu_flops_per_elem);
  }
  if (j.contains("machine")) s.machine = parse_machine(j.at("machine"));
  if (j.contains("sparsity_levels")) {
    const json& levels = j.at("sparsity_levels");
    if (!levels.is_array())
      throw std::invalid_argument("\"sparsity_levels\" must be an array");
    s.sparsity_levels.clear();
    for (const json& v : levels) {
      if (!v.is_number())
        throw std::invalid_argument("sparsity levels must be numbers");
      s.sparsity_levels.push_back(v.get<double>());
    }
  }
  if (j.contains("options")) {
    const json& o = j.at("options");
    if (!o.is_object())
      throw std::invalid_argument("\"options\" must be an object");
    reject_unknown_keys(o, "options.", {"weight_reuse", "format"});
    s.machine.weight_reuse =
        get_pos_int(o, "options.", "weight_reuse", s.machine.weight_reuse);
    if (o.contains("format")) {
      if (!o.at("format").is_string())
        throw std::invalid_argument("\"options.format\" must be a string");
      s.format = o.at("format").get<std::string>();
    }
  }
  s.validate();
  return s;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string render_scenario(const Scenario& s) {
  json j;
  j["graph"] = {{"tokens", s.graph.tokens},
                {"model_dim", s.graph.model_dim},
                {"ffn_dim", s.graph.ffn_dim},
                {"elem_bytes", s.graph.elem_bytes},
                {"gelu_flops_per_elem", s.graph.gelu_flops_per_elem}};
  bool is_preset = false;
  try {
    is_preset = preset(s.machine.name) == s.machine;
  } catch (const std::invalid_argument&) {
  }
  if (is_preset) {
    j["machine"] = s.machine.name;
  } else {
    json m;
    m["name"] = s.machine.name;
    m["compute_tflops"] = s.machine.compute_flops / kTflops;
    if (s.machine.offchip_bw) m["offchip_gbps"] = *s.machine.offchip_bw / kGBps;
    m["onchip_mb"] = s.machine.onchip_capacity / kMB;
    m["weight_reuse"] = s.machine.weight_reuse;
    j["machine"] = m;
  }
  j["sparsity_levels"] = s.sparsity_levels;
  j["options"] = {{"format", s.format}};
  return j.dump(2) + "\n";
}

}  // namespace sparseflow
