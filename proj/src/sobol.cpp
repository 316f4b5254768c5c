#include "sepprob/sobol.hpp"

#include <bit>
#include <stdexcept>

namespace sepprob {

namespace {

// Joe-Kuo primitive polynomials and initial direction numbers, dims 2..16.
constexpr std::uint32_t kPoly[16] = {0, 3, 7, 11, 13, 19, 25, 37, 41, 47, 55, 59, 61, 67, 91, 97};
constexpr std::uint32_t kVinit[16][6] = {
    {1, 0, 0, 0, 0, 0},  {1, 0, 0, 0, 0, 0},  {1, 3, 0, 0, 0, 0},   {1, 3, 1, 0, 0, 0},
    {1, 1, 1, 0, 0, 0},  {1, 1, 3, 3, 0, 0},  {1, 3, 5, 13, 0, 0},  {1, 1, 5, 5, 17, 0},
    {1, 1, 5, 5, 5, 0},  {1, 1, 7, 11, 19, 0},{1, 1, 5, 1, 1, 0},   {1, 1, 1, 3, 11, 0},
    {1, 3, 5, 5, 31, 0}, {1, 3, 3, 9, 7, 49}, {1, 1, 1, 15, 21, 21},{1, 3, 1, 13, 27, 49}};
constexpr int kBits = 64;

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SobolSequence::SobolSequence(int dim, std::uint64_t scramble_seed) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("SobolSequence: dimension overflow (supported 1..16)");
  v_.assign(static_cast<std::size_t>(dim) * kBits, 0);
  for (int d = 0; d < dim; ++d) {
    std::uint64_t m[kBits];
    if (d == 0) {
      for (int k = 0; k < kBits; ++k) m[k] = 1;
    } else {
      const std::uint32_t p = kPoly[d];
      const int s = std::bit_width(p) - 1;  // polynomial degree
      for (int k = 0; k < s; ++k) m[k] = kVinit[d][k];
      for (int k = s; k < kBits; ++k) {
        std::uint64_t nm = m[k - s] ^ (m[k - s] << s);
        for (int j = 1; j < s; ++j)
          if ((p >> (s - j)) & 1u) nm ^= m[k - j] << j;
        m[k] = nm;
      }
    }
    for (int k = 0; k < kBits; ++k) v_[d * kBits + k] = m[k] << (kBits - 1 - k);
  }
  shift_.assign(dim, 0);
  if (scramble_seed != 0) {
    std::uint64_t st = scramble_seed;
    for (int d = 0; d < dim; ++d) shift_[d] = splitmix64(st);
  }
}

double SobolSequence::coordinate(std::uint64_t index, int d) const {
  std::uint64_t x = shift_[d];
  const std::uint64_t* vd = v_.data() + static_cast<std::size_t>(d) * kBits;
  std::uint64_t i = index;
  int k = 0;
  while (i) {
    if (i & 1u) x ^= vd[k];
    i >>= 1;
    ++k;
  }
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

void SobolSequence::point_at(std::uint64_t index, double* out) const {
  for (int d = 0; d < dim_; ++d) out[d] = coordinate(index, d);
}

}  // namespace sepprob
