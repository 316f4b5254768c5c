#pragma once

#include <cstdint>
#include <vector>

namespace sepprob {

// Digital (direction-number based) low-discrepancy sequence in [0,1)^d,
// enumerated in standard index order: point(i) is a pure function of i, so
// block skipping is exact and parallel shards are reproducible. seed = 0 is
// the unscrambled net; otherwise each dimension gets a 64-bit digital XOR
// shift derived from the seed.
class SobolSequence {
 public:
  static constexpr int kMaxDim = 16;

  explicit SobolSequence(int dim, std::uint64_t scramble_seed = 0);

  int dimension() const { return dim_; }
  std::uint64_t index() const { return index_; }
  void skip_to(std::uint64_t index) { index_ = index; }

  // Coordinates of an arbitrary point, independent of the counter.
  double coordinate(std::uint64_t index, int dim) const;
  void point_at(std::uint64_t index, double* out) const;

  // Next point in counter order.
  void next(double* out) { point_at(index_++, out); }

 private:
  int dim_;
  std::uint64_t index_ = 0;
  std::vector<std::uint64_t> v_;      // direction numbers, dim x 64
  std::vector<std::uint64_t> shift_;  // per-dimension digital shift
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace sepprob
