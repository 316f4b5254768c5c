#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace sepprob {

// Dense row-major N x N matrix, small fixed N (4 for real states, 8 for the
// complex Hermitian embedding).
template <std::size_t N>
using SquareMat = std::array<double, N * N>;

using Mat4 = SquareMat<4>;
using Mat8 = SquareMat<8>;

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
// Robust near degeneracies; converges to ~machine epsilon in a few sweeps.
template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(SquareMat<N> a) {
  constexpr int kMaxSweeps = 30;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += a[p * N + q] * a[p * N + q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = a[p * N + q];
        if (apq == 0.0) continue;
        const double app = a[p * N + p];
        const double aqq = a[q * N + q];
        const double tau = (aqq - app) / (2.0 * apq);
        // smaller root of t^2 + 2 tau t - 1 = 0
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = a[k * N + p];
          const double akq = a[k * N + q];
          a[k * N + p] = c * akp - s * akq;
          a[k * N + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = a[p * N + k];
          const double aqk = a[q * N + k];
          a[p * N + k] = c * apk - s * aqk;
          a[q * N + k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::array<double, N> lam{};
  for (std::size_t i = 0; i < N; ++i) lam[i] = a[i * N + i];
  // insertion sort, ascending
  for (std::size_t i = 1; i < N; ++i) {
    const double v = lam[i];
    std::size_t j = i;
    while (j > 0 && lam[j - 1] > v) {
      lam[j] = lam[j - 1];
      --j;
    }
    lam[j] = v;
  }
  return lam;
}

template <std::size_t N>
double min_eigenvalue(const SquareMat<N>& a) {
  return jacobi_eigenvalues<N>(a)[0];
}

// Determinant via LU with partial pivoting.
template <std::size_t N>
double determinant(SquareMat<N> a) {
  double det = 1.0;
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < N; ++r)
      if (std::fabs(a[r * N + c]) > std::fabs(a[piv * N + c])) piv = r;
    if (piv != c) {
      for (std::size_t k = 0; k < N; ++k) std::swap(a[c * N + k], a[piv * N + k]);
      det = -det;
    }
    const double d = a[c * N + c];
    if (d == 0.0) return 0.0;
    det *= d;
    for (std::size_t r = c + 1; r < N; ++r) {
      const double f = a[r * N + c] / d;
      for (std::size_t k = c + 1; k < N; ++k) a[r * N + k] -= f * a[c * N + k];
    }
  }
  return det;
}

}  // namespace sepprob
