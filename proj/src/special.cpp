#include "hmom/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hmom {

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double beta_function(double a, double b) {
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double beta_cdf_nn(int n, double x) {
  if (n < 1) throw std::domain_error("beta_cdf_nn: n >= 1 required");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // I_x(n,n) = sum_{j=n}^{2n-1} C(2n-1,j) x^j (1-x)^{2n-1-j}
  KahanSum s;
  for (int j = n; j <= 2 * n - 1; ++j) {
    double logterm = std::log(binomial(2 * n - 1, j)) + j * std::log(x) +
                     (2 * n - 1 - j) * std::log1p(-x);
    s.add(std::exp(logterm));
  }
  double v = s.value();
  if (v < 0.0) v = 0.0;
  if (v > 1.0) v = 1.0;
  return v;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0));
}

namespace {

QuadratureRule compute_gauss_legendre(int order) {
  // Newton iteration on P_order over [-1,1], then affine map to [0,1].
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < order; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = 0.5 * (1.0 - x);  // descending roots -> ascending nodes
    rule.weights[i] = 1.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw std::domain_error("gauss_legendre: order >= 1 required");
  static std::map<int, QuadratureRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
  return it->second;
}

}  // namespace hmom
