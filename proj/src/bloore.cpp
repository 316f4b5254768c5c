#include "sepprob/bloore.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sepprob {

XiValue XiValue::from_xi(double x) {
  const double mu = std::exp(x);
  return {x, mu * mu, mu};  // nu = mu^2 exactly as stored
}

DensityMatrix4 rho_from_bloore(const Diag4& diag, const ZVec& z) {
  double sum = 0.0;
  for (double d : diag) {
    if (d < -kSimplexTol) throw std::invalid_argument("rho_from_bloore: negative diagonal entry");
    sum += d;
  }
  if (std::fabs(sum - 1.0) > kSimplexTol)
    throw std::invalid_argument("rho_from_bloore: diagonal off the unit simplex");
  for (double v : z)
    if (std::fabs(v) > 1.0 + kSimplexTol)
      throw std::invalid_argument("rho_from_bloore: |z| > 1");

  DensityMatrix4 rho{};
  std::array<double, 4> s{};
  for (int i = 0; i < 4; ++i) {
    s[i] = std::sqrt(std::max(diag[i], 0.0));
    rho.m[i * 4 + i] = diag[i];
  }
  for (int k = 0; k < 6; ++k) {
    const int i = kZPairs[k][0], j = kZPairs[k][1];
    const double v = z[k] * s[i] * s[j];
    rho.m[i * 4 + j] = v;
    rho.m[j * 4 + i] = v;
  }
  return rho;
}

XiValue xi_of(const Diag4& diag) {
  for (double d : diag)
    if (!(d > 0.0)) throw std::domain_error("xi_of: diagonal entry must be strictly positive");
  const double x = 0.5 * std::log(diag[0] * diag[3] / (diag[1] * diag[2]));
  return XiValue::from_xi(x);
}

Mat4 correlation_matrix(const ZVec& z) {
  Mat4 a{};
  for (int i = 0; i < 4; ++i) a[i * 4 + i] = 1.0;
  for (int k = 0; k < 6; ++k) {
    const int i = kZPairs[k][0], j = kZPairs[k][1];
    a[i * 4 + j] = z[k];
    a[j * 4 + i] = z[k];
  }
  return a;
}

bool correlation_psd(const ZVec& z) {
  return min_eigenvalue<4>(correlation_matrix(z)) >= -kPsdTol;
}

ZVec pt_correlation(const ZVec& z, const XiValue& xi) {
  ZVec zp = z;
  zp[kZ14] = z[kZ23] / xi.mu;
  zp[kZ23] = z[kZ14] * xi.mu;
  return zp;
}

double pt_principal_minor(const ZVec& z, const XiValue& xi, int order, int index) {
  const ZVec zp = pt_correlation(z, xi);
  const Mat4 a = correlation_matrix(zp);
  switch (order) {
    case 2: {
      if (index < 1 || index > 6) throw std::invalid_argument("pt_principal_minor: 2x2 index must be 1..6");
      const double v = zp[index - 1];
      return 1.0 - v * v;
    }
    case 3: {
      if (index < 1 || index > 4) throw std::invalid_argument("pt_principal_minor: 3x3 index must be 1..4");
      int rows[3], r = 0;
      for (int i = 0; i < 4; ++i)
        if (i != index - 1) rows[r++] = i;
      SquareMat<3> s{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s[i * 3 + j] = a[rows[i] * 4 + rows[j]];
      return determinant<3>(s);
    }
    case 4:
      return determinant<4>(a);
    default:
      throw std::invalid_argument("pt_principal_minor: order must be 2, 3 or 4");
  }
}

bool peres_separable(const BlooreState& state) {
  if (!correlation_psd(state.z))
    throw std::domain_error("peres_separable: state is not a valid density matrix");
  const XiValue xi = xi_of(state.diag);
  const Mat4 zp = correlation_matrix(pt_correlation(state.z, xi));
  return min_eigenvalue<4>(zp) >= -kPsdTol;
}

bool peres_separable_det(const ZVec& z, const XiValue& xi) {
  const Mat4 zp = correlation_matrix(pt_correlation(z, xi));
  return determinant<4>(zp) >= -kPsdTol;
}

bool absolutely_separable(const BlooreState& state) {
  auto lam = rho_from_bloore(state.diag, state.z).eigenvalues();  // ascending
  const double crit = lam[3] - lam[1] - 2.0 * std::sqrt(std::max(lam[2] * lam[0], 0.0));
  return crit <= kPsdTol;
}

}  // namespace sepprob
