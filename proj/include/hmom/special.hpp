#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hmom {

/// log Gamma(x), x > 0.
double log_gamma(double x);

/// Beta function B(a,b), computed through log-gamma.
double beta_function(double a, double b);

/// Regularized incomplete beta I_x(n,n) for integer n >= 1.
/// Uses the exact binomial-sum form of the Beta(n,n) CDF.
double beta_cdf_nn(int n, double x);

/// Binomial coefficient as double.
double binomial(int n, int k);

/// Gauss-Legendre rule with `order` points on [0,1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int order);

/// Compensated (Kahan) accumulator.
class KahanSum {
 public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace hmom
