#include "sparseflow/funcsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sparseflow {

void MaskedWeights::validate() const {
  weights.validate();
  mask.validate();
  if (weights.rows != mask.rows || weights.cols != mask.cols)
    throw std::invalid_argument("masked weights: mask shape differs");
}

float gelu_scalar(float x) {
  const float c0 = 0.7978845608f;  // sqrt(2/pi)
  const float c1 = 0.044715f;
  return 0.5f * x * (1.0f + std::tanh(c0 * (x + c1 * x * x * x)));
}

DenseTensor gemm(const DenseTensor& a, const MaskedWeights& w, SimStats* stats) {
  if (a.cols != w.weights.rows)
    throw std::invalid_argument(
        "gemm: a.cols " + std::to_string(a.cols) + " != weight rows " +
        std::to_string(w.weights.rows));
  w.validate();

  const std::int64_t k = w.weights.rows;
  const std::int64_t n = w.weights.cols;

  // Zero out pruned entries once, then run the dense kernel over them.
  DenseTensor eff = w.weights;
  std::int64_t nonzeros = 0;
  for (std::size_t i = 0; i < eff.values.size(); ++i) {
    if (!w.mask.bits[i])
      eff.values[i] = 0.0f;
    else
      ++nonzeros;
  }

  DenseTensor out(a.rows, n);
  for (std::int64_t i = 0; i < a.rows; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      float acc = 0.0f;
      for (std::int64_t kk = 0; kk < k; ++kk)
        acc += a.at(i, kk) * eff.at(kk, j);
      out.at(i, j) = acc;
    }
  }
  if (stats) {
    stats->dense_macs += a.rows * k * n;
    stats->effective_macs += a.rows * nonzeros;
  }
  return out;
}

DenseTensor gelu(const DenseTensor& x) {
  DenseTensor out = x;
  for (auto& v : out.values) v = gelu_scalar(v);
  return out;
}

DenseTensor apply_elementwise(const DenseTensor& x, const ElementwiseOp& op) {
  if (x.cols != op.width)
    throw std::invalid_argument("elementwise: width mismatch at \"" + op.name +
                                "\"");
  if (op.name == "gelu") return gelu(x);
  if (op.name == "relu") {
    DenseTensor out = x;
    for (auto& v : out.values) v = v > 0.0f ? v : 0.0f;
    return out;
  }
  if (op.name == "identity") return x;
  throw std::invalid_argument("elementwise: unknown operator \"" + op.name +
                              "\" (known: gelu, relu, identity)");
}

namespace {

void check_weights(const Graph& g, const std::vector<MaskedWeights>& weights) {
  std::size_t gemms = 0;
  for (const auto& op : g.ops) gemms += is_gemm(op);
  if (weights.size() != gemms)
    throw std::invalid_argument(
        "run: expected " + std::to_string(gemms) + " weight sets, got " +
        std::to_string(weights.size()));
  std::size_t wi = 0;
  for (const auto& op : g.ops) {
    if (const auto* gm = std::get_if<GemmOp>(&op)) {
      const auto& w = weights[wi++];
      if (w.weights.rows != gm->k || w.weights.cols != gm->n)
        throw std::invalid_argument(
            "run: weight set " + std::to_string(wi - 1) +
            " shape does not match its gemm");
    }
  }
}

DenseTensor run_chain(const Graph& g, const DenseTensor& input,
                      const std::vector<MaskedWeights>& weights,
                      SimStats* stats) {
  DenseTensor cur = input;
  std::size_t wi = 0;
  for (const auto& op : g.ops) {
    if (is_gemm(op))
      cur = gemm(cur, weights[wi++], stats);
    else
      cur = apply_elementwise(cur, std::get<ElementwiseOp>(op));
  }
  return cur;
}

}  // namespace

DenseTensor run_kbk(const Graph& g, const DenseTensor& input,
                    const std::vector<MaskedWeights>& weights, SimStats* stats) {
  if (!g.edges.empty() && input.cols != g.edges.front().tensor.cols)
    throw std::invalid_argument("run_kbk: input cols do not match chain input");
  check_weights(g, weights);
  return run_chain(g, input, weights, stats);
}

DenseTensor run_df(const Graph& g, const DenseTensor& input,
                   const std::vector<MaskedWeights>& weights,
                   std::int64_t tile_rows, SimStats* stats) {
  if (tile_rows < 1)
    throw std::invalid_argument("run_df: tile_rows must be >= 1");
  if (!g.edges.empty() && input.cols != g.edges.front().tensor.cols)
    throw std::invalid_argument("run_df: input cols do not match chain input");
  check_weights(g, weights);

  DenseTensor out;
  for (std::int64_t start = 0; start < input.rows; start += tile_rows) {
    const std::int64_t rows = std::min(tile_rows, input.rows - start);
    DenseTensor tile(rows, input.cols);
    std::copy_n(input.values.begin() + start * input.cols, rows * input.cols,
                tile.values.begin());
    DenseTensor tile_out = run_chain(g, tile, weights, stats);
    if (out.rows == 0) {
      out.cols = tile_out.cols;
      out.values.reserve(static_cast<std::size_t>(input.rows * tile_out.cols));
    }
    out.rows += tile_out.rows;
    out.values.insert(out.values.end(), tile_out.values.begin(),
                      tile_out.values.end());
  }
  if (input.rows == 0) out = run_chain(g, input, weights, stats);
  return out;
}

}  // namespace sparseflow
