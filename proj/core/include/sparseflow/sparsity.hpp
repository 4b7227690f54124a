// Weight-mask construction (magnitude and seeded-random pruning), densify
// semantics for sparse-to-dense training schedules, and the end-to-end
// schedule speedup planner.
//
// Mask text format: header "rows cols sparsity", then one row of
// space-separated 0/1 flags per line (1 = weight kept).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sparseflow/tensor.hpp"

namespace sparseflow {

struct WeightMask {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<std::uint8_t> bits;  // row-major, 1 = kept
  double target_sparsity = 0.0;

  bool kept(std::int64_t i, std::int64_t j) const {
    return bits[static_cast<std::size_t>(i * cols + j)] != 0;
  }

  std::int64_t size() const { return rows * cols; }
  std::int64_t zero_count() const;

  /// Checks dims, bit count, and that zeros == floor(size * target_sparsity).
  void validate() const;

  bool operator==(const WeightMask&) const = default;
};

WeightMask full_mask(std::int64_t rows, std::int64_t cols);

/// Fraction of pruned entries: zeros / size.
double mask_sparsity(const WeightMask& mask);

/// Zeros exactly floor(N*s) entries of smallest magnitude; ties are pruned
/// in row-major index order. Throws on an empty matrix or s outside [0, 1).
WeightMask prune_magnitude(const DenseTensor& weights, double s);

/// Zeros exactly floor(N*s) uniformly chosen entries; deterministic per seed.
WeightMask random_mask(std::int64_t rows, std::int64_t cols, double s,
                       std::uint64_t seed);

/// The sparse-to-dense transition: pruned entries become explicit zeros and
/// the mask is lifted, so later (dense) updates may touch every entry.
struct DensifyResult {
  DenseTensor weights;
  WeightMask mask;  // all ones
};

DensifyResult densify(const DenseTensor& weights, const WeightMask& mask);

/// Training schedule: sparse_steps at sparse_step_speedup, the remainder at
/// dense speed on the same machine.
struct S2dSchedule {
  std::int64_t total_steps = 0;
  std::int64_t sparse_steps = 0;
  double sparse_step_speedup = 1.0;
};

/// Time-weighted end-to-end speedup:
///   total / (sparse/speedup + (total - sparse)).
/// Exactly 1 for an all-dense schedule and exactly sparse_step_speedup for an
/// all-sparse one.
double s2d_end_to_end_speedup(const S2dSchedule& sched);

void write_mask(std::ostream& os, const WeightMask& mask);
WeightMask read_mask(std::istream& is);

void write_mask_file(const std::string& path, const WeightMask& mask);
WeightMask read_mask_file(const std::string& path);

}  // namespace sparseflow
