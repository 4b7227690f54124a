// Row-major single-precision tensors with a flat text interchange format:
// header "rows cols", then whitespace-separated values.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sparseflow {

struct DenseTensor {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<float> values;  // row-major, rows*cols entries

  DenseTensor() = default;
  DenseTensor(std::int64_t r, std::int64_t c)
      : rows(r), cols(c), values(static_cast<std::size_t>(r * c), 0.0f) {}
  DenseTensor(std::int64_t r, std::int64_t c, std::vector<float> v);

  float& at(std::int64_t i, std::int64_t j) {
    return values[static_cast<std::size_t>(i * cols + j)];
  }
  float at(std::int64_t i, std::int64_t j) const {
    return values[static_cast<std::size_t>(i * cols + j)];
  }

  std::int64_t size() const { return rows * cols; }

  /// Shape and finiteness check; throws std::invalid_argument.
  void validate() const;

  bool operator==(const DenseTensor&) const = default;
};

/// Writes with enough digits to reproduce every float exactly.
void write_tensor(std::ostream& os, const DenseTensor& t);
DenseTensor read_tensor(std::istream& is);

void write_tensor_file(const std::string& path, const DenseTensor& t);
DenseTensor read_tensor_file(const std::string& path);

}  // namespace sparseflow
