#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "sparseflow/sparsity.hpp"
#include "sparseflow/tensor.hpp"

using namespace sparseflow;

TEST_SUITE("sparsity") {

TEST_CASE("magnitude pruning zeroes the smallest entries") {
  DenseTensor w(2, 2, {3.0f, -1.0f, 2.0f, -4.0f});
  WeightMask m = prune_magnitude(w, 0.5);
  CHECK(m.zero_count() == 2);
  CHECK(m.kept(0, 0));
  CHECK(!m.kept(0, 1));  // |-1| smallest
  CHECK(!m.kept(1, 0));  // |2| next
  CHECK(m.kept(1, 1));
  CHECK(m.target_sparsity == 0.5);
  CHECK_NOTHROW(m.validate());
}

TEST_CASE("pruning breaks magnitude ties in row-major order") {
  DenseTensor w(2, 2, {1.0f, 1.0f, 1.0f, 1.0f});
  WeightMask m = prune_magnitude(w, 0.5);
  CHECK(!m.kept(0, 0));
  CHECK(!m.kept(0, 1));
  CHECK(m.kept(1, 0));
  CHECK(m.kept(1, 1));
}

TEST_CASE("pruning keeps exactly floor(N*s) zeros") {
  DenseTensor w(1, 5, {5.0f, 4.0f, 3.0f, 2.0f, 1.0f});
  CHECK(prune_magnitude(w, 0.5).zero_count() == 2);   // floor(2.5)
  CHECK(prune_magnitude(w, 0.0).zero_count() == 0);
  CHECK(prune_magnitude(w, 0.999).zero_count() == 4);  // floor(4.995)
  CHECK_THROWS_AS(prune_magnitude(w, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(prune_magnitude(w, -0.1), std::invalid_argument);
}

TEST_CASE("pruning is invariant under positive scaling") {
  DenseTensor w(3, 4,
                {0.3f, -2.0f, 0.3f, 1.5f, -0.7f, 0.0f, 4.0f, -0.3f, 2.5f,
                 -1.1f, 0.9f, 0.05f});
  WeightMask base = prune_magnitude(w, 0.5);
  DenseTensor scaled = w;
  for (auto& v : scaled.values) v *= 2.0f;
  CHECK(prune_magnitude(scaled, 0.5) == base);
}

TEST_CASE("random masks are deterministic per seed") {
  WeightMask a = random_mask(16, 8, 0.75, 42);
  WeightMask b = random_mask(16, 8, 0.75, 42);
  WeightMask c = random_mask(16, 8, 0.75, 43);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.zero_count() == 96);  // floor(128 * 0.75)
  CHECK(mask_sparsity(a) == 0.75);
  CHECK_NOTHROW(a.validate());
}

TEST_CASE("mask bookkeeping") {
  WeightMask full = full_mask(4, 4);
  CHECK(full.zero_count() == 0);
  CHECK(mask_sparsity(full) == 0.0);

  WeightMask broken = full;
  broken.target_sparsity = 0.5;  // zero count no longer matches
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  broken = full;
  broken.bits.pop_back();
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("densify zero-fills pruned entries and lifts the mask") {
  DenseTensor w(2, 2, {3.0f, -1.0f, 2.0f, -4.0f});
  WeightMask m = prune_magnitude(w, 0.5);
  DensifyResult r = densify(w, m);
  CHECK(r.weights.at(0, 0) == 3.0f);
  CHECK(r.weights.at(0, 1) == 0.0f);
  CHECK(r.weights.at(1, 0) == 0.0f);
  CHECK(r.weights.at(1, 1) == -4.0f);
  CHECK(r.mask == full_mask(2, 2));

  DenseTensor wrong(3, 2);
  CHECK_THROWS_AS(densify(wrong, m), std::invalid_argument);
}

TEST_CASE("schedule speedup interpolates between exact endpoints") {
  CHECK(s2d_end_to_end_speedup({150000, 100000, 7.9}) ==
        doctest::Approx(2.393939393939394).epsilon(1e-15));

  // Endpoints are algebraic identities and must hold bit-for-bit.
  CHECK(s2d_end_to_end_speedup({150000, 0, 7.9}) == 1.0);
  CHECK(s2d_end_to_end_speedup({150000, 150000, 7.9}) == 7.9);
  CHECK(s2d_end_to_end_speedup({1, 0, 3.3}) == 1.0);
  CHECK(s2d_end_to_end_speedup({1, 1, 3.3}) == 3.3);
}

TEST_CASE("schedule speedup is monotone in the sparse fraction") {
  double prev = 1.0;
  for (std::int64_t p : {10'000, 50'000, 90'000, 140'000}) {
    double x = s2d_end_to_end_speedup({150'000, p, 7.9});
    CHECK(x > prev);
    CHECK(x < 7.9);
    prev = x;
  }
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(s2d_end_to_end_speedup({0, 0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(s2d_end_to_end_speedup({10, 11, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(s2d_end_to_end_speedup({10, -1, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(s2d_end_to_end_speedup({10, 5, 0.0}),
                  std::invalid_argument);
  // A slowdown while sparse is a legal schedule, just not a helpful one.
  CHECK(s2d_end_to_end_speedup({10, 10, 0.5}) == 0.5);
}

TEST_CASE("mask text round-trip") {
  WeightMask m = random_mask(4, 5, 0.25, 7);
  std::stringstream ss;
  write_mask(ss, m);
  CHECK(read_mask(ss) == m);

  // Header line carries rows, cols, and the target sparsity.
  std::string text = ss.str();
  CHECK(text.substr(0, 9) == "4 5 0.25\n");
}

TEST_CASE("mask text rejects malformed input") {
  std::stringstream no_header("4");
  CHECK_THROWS_WITH_AS(read_mask(no_header), doctest::Contains("header"),
                       std::invalid_argument);

  std::stringstream bad_bit("2 2 0.0\n1 2\n1 1\n");
  CHECK_THROWS_WITH_AS(read_mask(bad_bit), doctest::Contains("0 or 1"),
                       std::invalid_argument);

  std::stringstream truncated("2 2 0.0\n1 1\n");
  CHECK_THROWS_AS(read_mask(truncated), std::invalid_argument);

  // Grid contradicting the declared sparsity fails validation on read.
  std::stringstream wrong_count("2 2 0.5\n1 1\n1 1\n");
  CHECK_THROWS_AS(read_mask(wrong_count), std::invalid_argument);
}

}  // TEST_SUITE
