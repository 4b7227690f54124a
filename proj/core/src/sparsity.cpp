#include "sparseflow/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <locale>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

namespace sparseflow {

std::int64_t WeightMask::zero_count() const {
  std::int64_t zeros = 0;
  for (auto b : bits) zeros += b == 0;
  return zeros;
}

void WeightMask::validate() const {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("mask: dimensions must be >= 1");
  if (bits.size() != static_cast<std::size_t>(rows * cols))
    throw std::invalid_argument("mask: bit count must be rows*cols");
  if (target_sparsity < 0.0 || target_sparsity >= 1.0)
    throw std::invalid_argument("mask: target_sparsity must be in [0, 1)");
  const auto expected = static_cast<std::int64_t>(
      std::floor(static_cast<double>(size()) * target_sparsity));
  if (zero_count() != expected)
    throw std::invalid_argument(
        "mask: zero count " + std::to_string(zero_count()) +
        " does not match floor(size * sparsity) = " + std::to_string(expected));
}

WeightMask full_mask(std::int64_t rows, std::int64_t cols) {
  WeightMask m{rows, cols,
               std::vector<std::uint8_t>(static_cast<std::size_t>(rows * cols),
                                         1),
               0.0};
  m.validate();
  return m;
}

double mask_sparsity(const WeightMask& mask) {
  return static_cast<double>(mask.zero_count()) /
         static_cast<double>(mask.size());
}

namespace {

std::int64_t prune_count(std::int64_t n, double s) {
  if (s < 0.0 || s >= 1.0)
    throw std::invalid_argument("prune: sparsity must be in [0, 1)");
  return static_cast<std::int64_t>(std::floor(static_cast<double>(n) * s));
}

}  // namespace

WeightMask prune_magnitude(const DenseTensor& weights, double s) {
  const std::int64_t n = weights.size();
  if (n == 0) throw std::invalid_argument("prune_magnitude: empty matrix");
  const std::int64_t zeros = prune_count(n, s);

  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  // Stable on equal magnitudes: earlier row-major index pruned first.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int64_t a, std::int64_t b) {
                     return std::fabs(weights.values[a]) <
                            std::fabs(weights.values[b]);
                   });

  WeightMask mask = full_mask(weights.rows, weights.cols);
  mask.target_sparsity = s;
  for (std::int64_t i = 0; i < zeros; ++i)
    mask.bits[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 0;
  mask.validate();
  return mask;
}

WeightMask random_mask(std::int64_t rows, std::int64_t cols, double s,
                       std::uint64_t seed) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("random_mask: dimensions must be >= 1");
  const std::int64_t n = rows * cols;
  const std::int64_t zeros = prune_count(n, s);

  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  WeightMask mask = full_mask(rows, cols);
  mask.target_sparsity = s;
  for (std::int64_t i = 0; i < zeros; ++i)
    mask.bits[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 0;
  mask.validate();
  return mask;
}

DensifyResult densify(const DenseTensor& weights, const WeightMask& mask) {
  if (weights.rows != mask.rows || weights.cols != mask.cols)
    throw std::invalid_argument("densify: weight and mask shapes differ");
  DensifyResult r;
  r.weights = weights;
  for (std::size_t i = 0; i < r.weights.values.size(); ++i)
    if (!mask.bits[i]) r.weights.values[i] = 0.0f;
  r.mask = full_mask(weights.rows, weights.cols);
  return r;
}

double s2d_end_to_end_speedup(const S2dSchedule& sched) {
  if (sched.total_steps == 0)
    throw std::invalid_argument("s2d: total_steps must be > 0");
  if (sched.total_steps < 0 || sched.sparse_steps < 0 ||
      sched.sparse_steps > sched.total_steps)
    throw std::invalid_argument(
        "s2d: need 0 <= sparse_steps <= total_steps");
  if (!(sched.sparse_step_speedup > 0.0))
    throw std::invalid_argument("s2d: sparse_step_speedup must be > 0");

  // Endpoints simplify algebraically; return them exactly.
  if (sched.sparse_steps == 0) return 1.0;
  if (sched.sparse_steps == sched.total_steps) return sched.sparse_step_speedup;

  const double total = static_cast<double>(sched.total_steps);
  const double sparse = static_cast<double>(sched.sparse_steps);
  return total / (sparse / sched.sparse_step_speedup + (total - sparse));
}

void write_mask(std::ostream& os, const WeightMask& mask) {
  os.imbue(std::locale::classic());
  os.precision(std::numeric_limits<double>::max_digits10);
  os << mask.rows << ' ' << mask.cols << ' ' << mask.target_sparsity << '\n';
  for (std::int64_t i = 0; i < mask.rows; ++i) {
    for (std::int64_t j = 0; j < mask.cols; ++j) {
      if (j) os << ' ';
      os << (mask.kept(i, j) ? '1' : '0');
    }
    os << '\n';
  }
}

WeightMask read_mask(std::istream& is) {
  is.imbue(std::locale::classic());
  WeightMask mask;
  if (!(is >> mask.rows >> mask.cols >> mask.target_sparsity))
    throw std::invalid_argument(
        "mask: malformed header, expected \"rows cols sparsity\"");
  if (mask.rows < 1 || mask.cols < 1)
    throw std::invalid_argument("mask: dimensions must be >= 1");
  mask.bits.resize(static_cast<std::size_t>(mask.rows * mask.cols));
  for (auto& b : mask.bits) {
    char c = 0;
    if (!(is >> c) || (c != '0' && c != '1'))
      throw std::invalid_argument("mask: grid entries must be 0 or 1");
    b = c == '1' ? 1 : 0;
  }
  mask.validate();
  return mask;
}

void write_mask_file(const std::string& path, const WeightMask& mask) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_mask(os, mask);
  if (!os) throw std::runtime_error("write failed: " + path);
}

WeightMask read_mask_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return read_mask(is);
}

}  // namespace sparseflow
