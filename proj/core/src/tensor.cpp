#include "sparseflow/tensor.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <locale>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sparseflow {

DenseTensor::DenseTensor(std::int64_t r, std::int64_t c, std::vector<float> v)
    : rows(r), cols(c), values(std::move(v)) {
  validate();
}

void DenseTensor::validate() const {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("tensor: negative dimensions");
  if (values.size() != static_cast<std::size_t>(rows * cols))
    throw std::invalid_argument("tensor: values length must be rows*cols");
  for (float v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("tensor: entries must be finite");
}

void write_tensor(std::ostream& os, const DenseTensor& t) {
  os.imbue(std::locale::classic());
  os << t.rows << ' ' << t.cols << '\n';
  std::ostringstream line;
  line.imbue(std::locale::classic());
  line.precision(std::numeric_limits<float>::max_digits10);
  for (std::int64_t i = 0; i < t.rows; ++i) {
    line.str("");
    for (std::int64_t j = 0; j < t.cols; ++j) {
      if (j) line << ' ';
      line << t.at(i, j);
    }
    os << line.str() << '\n';
  }
}

DenseTensor read_tensor(std::istream& is) {
  is.imbue(std::locale::classic());
  std::int64_t rows = 0, cols = 0;
  if (!(is >> rows >> cols))
    throw std::invalid_argument("tensor: malformed header, expected "
                                "\"rows cols\"");
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("tensor: negative dimensions in header");
  DenseTensor t(rows, cols);
  for (auto& v : t.values)
    if (!(is >> v)) throw std::invalid_argument("tensor: too few values");
  t.validate();
  return t;
}

void write_tensor_file(const std::string& path, const DenseTensor& t) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_tensor(os, t);
  if (!os) throw std::runtime_error("write failed: " + path);
}

DenseTensor read_tensor_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return read_tensor(is);
}

}  // namespace sparseflow
