#pragma once

#include <functional>
#include <string>
#include <vector>

namespace sepprob {

// A separability function of xi: two analytic branch functions plus the
// value at 0 (average of the one-sided limits; all catalog curves except the
// 2x2 branch pair are continuous there, so this equals either limit).
class DesfCurve {
 public:
  DesfCurve() = default;
  DesfCurve(std::string name, std::function<double(double)> neg_branch,
            std::function<double(double)> pos_branch);

  double operator()(double xi) const {
    if (xi < 0.0) return neg_(xi);
    if (xi > 0.0) return pos_(xi);
    return at_zero_;
  }
  double left_limit() const { return neg_(0.0); }
  double right_limit() const { return pos_(0.0); }
  double at_zero() const { return at_zero_; }
  const std::string& name() const { return name_; }

  const std::function<double(double)>& neg_branch() const { return neg_; }
  const std::function<double(double)>& pos_branch() const { return pos_; }

 private:
  std::string name_;
  std::function<double(double)> neg_, pos_;
  double at_zero_ = 0.0;
};

// Catalog names: dominant, intermediate, s3x3, s2x2, conjecture,
// previous_conjecture, scenario_complex_pair, paired_dominant,
// paired_intermediate, paired_greater. Unknown name throws.
DesfCurve catalog(const std::string& name);
std::vector<std::string> catalog_names();

DesfCurve reflect(const DesfCurve& c);
DesfCurve envelope_min(const DesfCurve& a, const DesfCurve& b);
DesfCurve product(const DesfCurve& a, const DesfCurve& b);
DesfCurve power(const DesfCurve& c, int k);  // k in {2,4}

// Normalized marginal density of xi under the Hilbert-Schmidt measure
// (beta = 1). Even, positive, integrates to 1.
double jacobian_closed(double xi);

struct JacobianCurve {
  double operator()(double xi) const { return jacobian_closed(xi); }
};

namespace detail {
// The printed closed form, evaluated stably (tail-subtracted sinh/cosh
// series; the low-order polynomial parts cancel identically). 0/0 at xi = 0.
double jacobian_direct(double xi);
// Even Taylor series about 0, frozen rational coefficients; |xi| <= 1.
double jacobian_series(double xi);
}  // namespace detail

}  // namespace sepprob
