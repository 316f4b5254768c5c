#pragma once

#include <array>
#include <functional>
#include <stdexcept>

#include "sepprob/desf.hpp"

namespace sepprob {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult partial)
      : std::runtime_error(what), partial_result(partial) {}
  QuadratureResult partial_result;
};

// Random-matrix symmetry class: 1 real, 2 complex, 4 quaternionic.
struct BetaParameter {
  explicit BetaParameter(int b) : value(b) {
    if (b != 1 && b != 2 && b != 4)
      throw std::invalid_argument("BetaParameter: beta must be 1, 2 or 4");
  }
  int value;
};

// Integral of f over the real line for integrands with exponentially decaying
// tails: xi = atanh(t) compactification with adaptive Gauss-Kronrod panels,
// tail cutoff |xi| <= 40. Throws QuadratureError carrying the partial result
// if the error estimate does not reach tol within the evaluation budget.
QuadratureResult integrate_line(const std::function<double(double)>& f, double tol = 1e-10,
                                long max_evaluations = 400000);

// P = int S(xi) J(xi) dxi, to ~1e-10 absolute for catalog integrands.
double sep_probability(const DesfCurve& curve, const JacobianCurve& jac = {});

// Normalized marginal density of xi for diagonal weight prod rho_ii^{alpha_i - 1}
// on the simplex. alpha = 3 beta/2 + 1 (all equal) reproduces the HS classes;
// asymmetric alphas cover the fixed-zero-pattern scenarios.
double dirichlet_xi_marginal(const std::array<double, 4>& alpha, double xi);

// Same marginal for the HS class beta: numeric re-derivation of J.
double jacobian_numeric(BetaParameter beta, double xi);

// int C(xi)^p J_beta(xi) dxi with p = beta (2 for complex, 4 for quaternionic),
// proportionality constant taken as 1.
double power_class_probability(const DesfCurve& curve, BetaParameter beta);

// Minimally-degenerate (boundary) figure: exactly half the nondegenerate one.
double boundary_halve(double p);

}  // namespace sepprob
