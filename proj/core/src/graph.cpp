#include "sparseflow/graph.hpp"

#include <cmath>
#include <stdexcept>

namespace sparseflow {

std::int64_t TensorSpec::stored_bytes() const {
  if (sparsity == 0.0) return dense_bytes();
  return std::llround(static_cast<double>(dense_bytes()) * (1.0 - sparsity));
}

void TensorSpec::validate() const {
  if (rows < 1) throw std::invalid_argument("TensorSpec: rows must be >= 1");
  if (cols < 1) throw std::invalid_argument("TensorSpec: cols must be >= 1");
  if (elem_bytes < 1)
    throw std::invalid_argument("TensorSpec: elem_bytes must be >= 1");
  if (sparsity < 0.0 || sparsity >= 1.0)
    throw std::invalid_argument("TensorSpec: sparsity must be in [0, 1)");
  if (role == TensorRole::Activation && sparsity != 0.0)
    throw std::invalid_argument("TensorSpec: activations must be dense");
}

std::int64_t op_input_cols(const OpNode& op) {
  if (const auto* g = std::get_if<GemmOp>(&op)) return g->k;
  return std::get<ElementwiseOp>(op).width;
}

std::int64_t op_output_cols(const OpNode& op) {
  if (const auto* g = std::get_if<GemmOp>(&op)) return g->n;
  return std::get<ElementwiseOp>(op).width;
}

std::int64_t op_elem_bytes(const OpNode& op) {
  if (const auto* g = std::get_if<GemmOp>(&op)) return g->weight.elem_bytes;
  return std::get<ElementwiseOp>(op).elem_bytes;
}

bool is_gemm(const OpNode& op) { return std::holds_alternative<GemmOp>(op); }

namespace {

void validate_op(const OpNode& op, std::size_t index, std::int64_t tokens) {
  if (const auto* g = std::get_if<GemmOp>(&op)) {
    if (g->m < 1 || g->k < 1 || g->n < 1)
      throw std::invalid_argument("op " + std::to_string(index) +
                                  ": gemm dims must be >= 1");
    if (g->m != tokens)
      throw std::invalid_argument("op " + std::to_string(index) +
                                  ": gemm m does not match tokens_per_tile");
    if (g->weight.role != TensorRole::Weight || g->weight.rows != g->k ||
        g->weight.cols != g->n)
      throw std::invalid_argument("op " + std::to_string(index) +
                                  ": weight shape must be k x n with role "
                                  "Weight");
    g->weight.validate();
  } else {
    const auto& e = std::get<ElementwiseOp>(op);
    if (e.width < 1)
      throw std::invalid_argument("op " + std::to_string(index) +
                                  ": elementwise width must be >= 1");
    if (e.flops_per_element < 0)
      throw std::invalid_argument("op " + std::to_string(index) +
                                  ": flops_per_element must be >= 0");
    if (e.elem_bytes < 1)
      throw std::invalid_argument("op " + std::to_string(index) +
                                  ": elem_bytes must be >= 1");
  }
}

}  // namespace

Graph make_chain(std::int64_t tokens, std::vector<OpNode> ops,
                 std::optional<std::int64_t> input_cols) {
  if (tokens < 1)
    throw std::invalid_argument("make_chain: tokens must be >= 1");
  if (ops.empty() && !input_cols)
    throw std::invalid_argument(
        "make_chain: empty chain needs explicit input_cols");

  std::int64_t width = input_cols ? *input_cols : op_input_cols(ops.front());
  std::int64_t elem = ops.empty() ? 2 : op_elem_bytes(ops.front());
  if (width < 1)
    throw std::invalid_argument("make_chain: input_cols must be >= 1");

  Graph g;
  g.tokens_per_tile = tokens;

  auto edge_tensor = [&](std::int64_t cols) {
    return TensorSpec{tokens, cols, elem, TensorRole::Activation, 0.0};
  };

  g.edges.push_back({edge_tensor(width), EdgeKind::BoundaryInput});
  for (std::size_t i = 0; i < ops.size(); ++i) {
    validate_op(ops[i], i, tokens);
    if (op_input_cols(ops[i]) != width)
      throw std::invalid_argument(
          "op " + std::to_string(i) + ": input cols " +
          std::to_string(op_input_cols(ops[i])) +
          " do not match incoming edge cols " + std::to_string(width));
    if (op_elem_bytes(ops[i]) != elem)
      throw std::invalid_argument("op " + std::to_string(i) +
                                  ": elem_bytes differs from chain width");
    width = op_output_cols(ops[i]);
    g.edges.push_back({edge_tensor(width), i + 1 == ops.size()
                                               ? EdgeKind::BoundaryOutput
                                               : EdgeKind::Intermediate});
  }
  g.ops = std::move(ops);
  return g;
}

Graph build_ffn_chain(std::int64_t tokens, std::int64_t model_dim,
                      std::int64_t ffn_dim, std::int64_t elem_bytes,
                      double sparsity, std::int64_t gelu_flops_per_elem) {
  if (sparsity < 0.0 || sparsity >= 1.0)
    throw std::invalid_argument("build_ffn_chain: sparsity must be in [0, 1)");

  auto weight = [&](std::int64_t k, std::int64_t n) {
    return TensorSpec{k, n, elem_bytes, TensorRole::Weight, sparsity};
  };
  std::vector<OpNode> ops;
  ops.emplace_back(GemmOp{tokens, model_dim, ffn_dim, weight(model_dim, ffn_dim)});
  ops.emplace_back(
      ElementwiseOp{ffn_dim, gelu_flops_per_elem, elem_bytes, "gelu"});
  ops.emplace_back(GemmOp{tokens, ffn_dim, model_dim, weight(ffn_dim, model_dim)});
  return make_chain(tokens, std::move(ops));
}

Graph FfnConfig::build(double sparsity) const {
  return build_ffn_chain(tokens, model_dim, ffn_dim, elem_bytes, sparsity,
                         gelu_flops_per_elem);
}

double op_flops(const OpNode& op, std::int64_t tokens) {
  if (const auto* g = std::get_if<GemmOp>(&op)) {
    double dense = 2.0 * static_cast<double>(tokens) *
                   static_cast<double>(g->k) * static_cast<double>(g->n);
    return (1.0 - g->weight.sparsity) * dense;
  }
  const auto& e = std::get<ElementwiseOp>(op);
  return static_cast<double>(tokens) * static_cast<double>(e.width) *
         static_cast<double>(e.flops_per_element);
}

TrafficBreakdown op_kbk_traffic(const OpNode& op, std::int64_t tokens,
                                std::int64_t weight_reuse) {
  if (weight_reuse < 1)
    throw std::invalid_argument("op_kbk_traffic: weight_reuse must be >= 1");
  TrafficBreakdown t;
  if (const auto* g = std::get_if<GemmOp>(&op)) {
    const double e = static_cast<double>(g->weight.elem_bytes);
    t.input_read = static_cast<double>(tokens) * static_cast<double>(g->k) * e;
    t.weight_read = static_cast<double>(g->weight.stored_bytes()) /
                    static_cast<double>(weight_reuse);
    t.output_write = static_cast<double>(tokens) * static_cast<double>(g->n) * e;
  } else {
    const auto& e = std::get<ElementwiseOp>(op);
    double bytes = static_cast<double>(tokens) * static_cast<double>(e.width) *
                   static_cast<double>(e.elem_bytes);
    t.input_read = bytes;
    t.output_write = bytes;
  }
  return t;
}

std::int64_t graph_boundary_traffic(const Graph& g) {
  if (g.edges.empty()) return 0;
  return g.edges.front().tensor.dense_bytes() +
         g.edges.back().tensor.dense_bytes();
}

double graph_flops(const Graph& g) {
  double total = 0.0;
  for (const auto& op : g.ops) total += op_flops(op, g.tokens_per_tile);
  return total;
}

double graph_gemm_flops(const Graph& g) {
  double total = 0.0;
  for (const auto& op : g.ops)
    if (is_gemm(op)) total += op_flops(op, g.tokens_per_tile);
  return total;
}

std::int64_t graph_weight_stored_bytes(const Graph& g) {
  std::int64_t total = 0;
  for (const auto& op : g.ops)
    if (const auto* gm = std::get_if<GemmOp>(&op))
      total += gm->weight.stored_bytes();
  return total;
}

double kbk_total_traffic(const Graph& g, std::int64_t weight_reuse) {
  double total = 0.0;
  for (const auto& op : g.ops)
    total += op_kbk_traffic(op, g.tokens_per_tile, weight_reuse).total();
  return total;
}

}  // namespace sparseflow
