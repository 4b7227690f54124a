// Compute-graph IR for linear operator chains: tensor shapes, FLOP and
// off-chip traffic accounting shared by the kernel-by-kernel and dataflow
// execution models.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sparseflow {

enum class TensorRole { Weight, Activation };

/// A 2-D tensor descriptor. Sparsity is the fraction of zero entries and is
/// meaningful only for weights; activations are always dense.
struct TensorSpec {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::int64_t elem_bytes = 2;
  TensorRole role = TensorRole::Activation;
  double sparsity = 0.0;

  std::int64_t dense_bytes() const { return rows * cols * elem_bytes; }

  /// Bytes actually stored: dense * (1 - sparsity), rounded to the nearest
  /// byte. No index/format overhead is charged for sparse storage.
  std::int64_t stored_bytes() const;

  void validate() const;
};

/// GEMM over a weight matrix of shape k x n applied to m token rows.
struct GemmOp {
  std::int64_t m = 0;
  std::int64_t k = 0;
  std::int64_t n = 0;
  TensorSpec weight;  // k x n, role Weight
};

/// Elementwise operator (GELU, ReLU, identity). Input and output shapes are
/// equal; cost is flops_per_element per tensor element.
struct ElementwiseOp {
  std::int64_t width = 0;
  std::int64_t flops_per_element = 0;
  std::int64_t elem_bytes = 2;
  std::string name = "identity";
};

using OpNode = std::variant<GemmOp, ElementwiseOp>;

enum class EdgeKind { BoundaryInput, Intermediate, BoundaryOutput };

struct EdgeSpec {
  TensorSpec tensor;  // role Activation, rows = tokens_per_tile
  EdgeKind kind = EdgeKind::Intermediate;
};

/// A linear chain of operators. Edges are derived: |ops|+1 activation
/// tensors, one per operator boundary plus the chain input and output.
struct Graph {
  std::int64_t tokens_per_tile = 0;
  std::vector<OpNode> ops;
  std::vector<EdgeSpec> edges;
};

std::int64_t op_input_cols(const OpNode& op);
std::int64_t op_output_cols(const OpNode& op);
std::int64_t op_elem_bytes(const OpNode& op);
bool is_gemm(const OpNode& op);

/// Builds a shape-checked chain with inferred edges. input_cols defaults to
/// the first operator's input width; it must be given for an empty chain.
/// Throws std::invalid_argument on any shape mismatch, naming the operator.
Graph make_chain(std::int64_t tokens, std::vector<OpNode> ops,
                 std::optional<std::int64_t> input_cols = std::nullopt);

/// GEMM(model_dim -> ffn_dim), elementwise GELU, GEMM(ffn_dim -> model_dim).
/// Both weight matrices carry the same sparsity fraction.
Graph build_ffn_chain(std::int64_t tokens, std::int64_t model_dim,
                      std::int64_t ffn_dim, std::int64_t elem_bytes,
                      double sparsity, std::int64_t gelu_flops_per_elem);

/// FFN chain family: fixed dimensions, sparsity supplied per build.
struct FfnConfig {
  std::int64_t tokens = 2048;
  std::int64_t model_dim = 5120;
  std::int64_t ffn_dim = 20480;
  std::int64_t elem_bytes = 2;
  std::int64_t gelu_flops_per_elem = 20;

  Graph build(double sparsity) const;

  friend bool operator==(const FfnConfig&, const FfnConfig&) = default;
};

/// A chain family parameterized by weight sparsity, used by the speedup
/// operations that compare a sparse instance against its dense baseline.
using GraphFamily = std::function<Graph(double)>;

/// FLOPs of one operator. GEMMs count 2 FLOPs per multiply-accumulate scaled
/// by weight density; elementwise ops count flops_per_element per element.
/// tokens is the activation row count.
double op_flops(const OpNode& op, std::int64_t tokens);

/// Off-chip bytes moved by one operator under kernel-by-kernel execution,
/// where every operand and result round-trips through off-chip memory.
struct TrafficBreakdown {
  double input_read = 0.0;
  double weight_read = 0.0;   // stored weight bytes amortized over reuse
  double output_write = 0.0;

  double activation_bytes() const { return input_read + output_write; }
  double total() const { return input_read + weight_read + output_write; }
};

TrafficBreakdown op_kbk_traffic(const OpNode& op, std::int64_t tokens,
                                std::int64_t weight_reuse);

/// Bytes crossing the chip boundary regardless of execution model: the chain
/// input is read once and the chain output written once.
std::int64_t graph_boundary_traffic(const Graph& g);

double graph_flops(const Graph& g);       // all operators
double graph_gemm_flops(const Graph& g);  // GEMM operators only
std::int64_t graph_weight_stored_bytes(const Graph& g);

/// Total KBK off-chip traffic: sum of op_kbk_traffic over the chain.
double kbk_total_traffic(const Graph& g, std::int64_t weight_reuse);

}  // namespace sparseflow
