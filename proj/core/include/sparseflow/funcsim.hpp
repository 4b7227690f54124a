// Functional simulator certifying that the fused dataflow schedule computes
// bit-identical results to kernel-by-kernel execution. Arithmetic is single
// precision with a fixed k-ascending accumulation order, so equivalence is
// exact equality rather than a tolerance check.
#pragma once

#include <cstdint>
#include <vector>

#include "sparseflow/graph.hpp"
#include "sparseflow/sparsity.hpp"
#include "sparseflow/tensor.hpp"

namespace sparseflow {

struct MaskedWeights {
  DenseTensor weights;
  WeightMask mask;  // same shape; effective value = weights * mask

  void validate() const;
};

/// Multiply-accumulate counters. The kernel is dense over masked weights, so
/// dense_macs counts m*k*n per GEMM while effective_macs counts only the
/// kept-weight products (m * mask nonzeros).
struct SimStats {
  std::int64_t dense_macs = 0;
  std::int64_t effective_macs = 0;

  double effective_ratio() const {
    return dense_macs == 0 ? 1.0
                           : static_cast<double>(effective_macs) /
                                 static_cast<double>(dense_macs);
  }
};

float gelu_scalar(float x);

/// out[i,j] = sum_k a[i,k] * (w[k,j] * mask[k,j]), k ascending, one float
/// accumulator per output element.
DenseTensor gemm(const DenseTensor& a, const MaskedWeights& w,
                 SimStats* stats = nullptr);

/// Elementwise tanh-approximation GELU.
DenseTensor gelu(const DenseTensor& x);

/// Applies an elementwise operator by name: "gelu", "relu", or "identity".
DenseTensor apply_elementwise(const DenseTensor& x, const ElementwiseOp& op);

/// Runs the chain one operator at a time, materializing every intermediate.
/// weights supplies one MaskedWeights per GEMM, in chain order.
DenseTensor run_kbk(const Graph& g, const DenseTensor& input,
                    const std::vector<MaskedWeights>& weights,
                    SimStats* stats = nullptr);

/// Pipeline emulation: slices the input into tile_rows-row tiles and pushes
/// each tile through the whole chain before the next. Per-element arithmetic
/// order matches run_kbk, so results are bit-identical.
DenseTensor run_df(const Graph& g, const DenseTensor& input,
                   const std::vector<MaskedWeights>& weights,
                   std::int64_t tile_rows, SimStats* stats = nullptr);

}  // namespace sparseflow
