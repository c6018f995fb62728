#include "hmom/selberg.hpp"

#include <cmath>

#include "hmom/rng.hpp"
#include "hmom/special.hpp"

namespace hmom {

namespace {

void check_domain(const SelbergParams& p) {
  if (p.n < 0) throw DomainError("selberg: n >= 0 required");
  if (p.n == 0) return;
  if (!(p.alpha > 0.0 && p.beta > 0.0))
    throw DomainError("selberg: alpha and beta must be positive");
  double bound = 1.0 / p.n;
  if (p.n > 1) {
    bound = std::min(bound, p.alpha / (p.n - 1));
    bound = std::min(bound, p.beta / (p.n - 1));
  }
  if (!(p.gamma > -bound)) throw DomainError("selberg: gamma outside convergence region");
}

double density(const SelbergParams& p, const double* t, bool skip_first_alpha) {
  // prod t^(a-1) (1-t)^(b-1) |Delta|^(2g); optionally t_1 carries a-2.
  double logv = 0.0;
  for (int j = 0; j < p.n; ++j) {
    double a = p.alpha - (skip_first_alpha && j == 0 ? 2.0 : 1.0);
    if (a != 0.0) logv += a * std::log(t[j]);
    if (p.beta != 1.0) logv += (p.beta - 1.0) * std::log1p(-t[j]);
  }
  double d2 = 1.0;
  for (int j = 0; j < p.n; ++j)
    for (int k = j + 1; k < p.n; ++k) {
      double diff = t[k] - t[j];
      d2 *= diff * diff;
    }
  return std::exp(logv) * std::pow(d2, p.gamma);
}

}  // namespace

double selberg_closed(const SelbergParams& p) {
  check_domain(p);
  double logv = 0.0;
  for (int j = 0; j < p.n; ++j) {
    logv += log_gamma(p.alpha + j * p.gamma);
    logv += log_gamma(p.beta + j * p.gamma);
    logv += log_gamma(1.0 + (j + 1) * p.gamma);
    logv -= log_gamma(p.alpha + p.beta + (p.n + j - 1) * p.gamma);
    logv -= log_gamma(1.0 + p.gamma);
  }
  return std::exp(logv);
}

IntegrationResult selberg_numeric(const SelbergParams& p, SelbergWeight weight,
                                  IntegrationMethod method, int quad_order,
                                  long long mc_samples, unsigned long long seed) {
  check_domain(p);
  IntegrationResult out;
  if (p.n == 0) {
    out.value = 1.0;
    return out;
  }
  if (method == IntegrationMethod::Quadrature) {
    if (p.n > 4)
      throw DomainError("selberg_numeric: quadrature supports n <= 4; use Monte Carlo");
    if (weight == SelbergWeight::None) {
      out.value = integrate_cube(p.n, quad_order,
                                 [&](const double* t) { return density(p, t, false); });
    } else {
      // By symmetry sum_j 1/t_j contributes n identical terms; fold 1/t_1
      // into the t_1 exponent, which stays polynomial for alpha >= 2.
      if (!(p.alpha >= 2.0))
        throw DomainError("selberg_numeric: weighted quadrature needs alpha >= 2");
      out.value = p.n * integrate_cube(p.n, quad_order, [&](const double* t) {
                    return density(p, t, true);
                  });
    }
    return out;
  }
  KahanSum sum, sumsq;
  std::vector<double> x(p.n);
  for (long long i = 0; i < mc_samples; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    for (int d = 0; d < p.n; ++d) x[d] = rng.uniform();
    double v = density(p, x.data(), false);
    if (weight == SelbergWeight::SumInverse) {
      double s = 0.0;
      for (int d = 0; d < p.n; ++d) s += 1.0 / x[d];
      v *= s;
    }
    sum.add(v);
    sumsq.add(v * v);
  }
  double mean = sum.value() / mc_samples;
  double var = std::max(0.0, sumsq.value() / mc_samples - mean * mean);
  out.value = mean;
  out.stderr_est = std::sqrt(var / mc_samples);
  return out;
}

double weighted_identity_residual_sym(int m, int quad_order) {
  if (m < 1) throw DomainError("weighted identity: m >= 1 required");
  double lhs = selberg_numeric({m, 3.0, 3.0, 2.0}, SelbergWeight::SumInverse,
                               IntegrationMethod::Quadrature, quad_order)
                   .value;
  double rhs = 0.5 * (selberg_closed({m, 5.0, 1.0, 2.0}) -
                      selberg_closed({m, 3.0, 3.0, 2.0}));
  return std::abs(lhs - rhs) / std::abs(rhs);
}

double weighted_identity_residual_low(int m, int quad_order) {
  if (m < 1) throw DomainError("weighted identity: m >= 1 required");
  double lhs = selberg_numeric({m, 3.0, 1.0, 2.0}, SelbergWeight::SumInverse,
                               IntegrationMethod::Quadrature, quad_order)
                   .value;
  double rhs = 0.5 * m * selberg_closed({m - 1, 5.0, 3.0, 2.0});
  return std::abs(lhs - rhs) / std::abs(rhs);
}

double volume_consistency_residual_odd(int m) {
  if (m < 1) throw DomainError("volume consistency: m >= 1 required");
  double a = selberg_closed({m, 1.0, 1.0, 2.0}) / std::exp(log_gamma(m + 1.0));
  double b = selberg_closed({m - 1, 3.0, 3.0, 2.0}) / std::exp(log_gamma(m + 0.0));
  return std::abs(a - b) / std::abs(a);
}

double volume_consistency_residual_even(int m) {
  if (m < 1) throw DomainError("volume consistency: m >= 1 required");
  double a = selberg_closed({m, 3.0, 1.0, 2.0});
  double b = selberg_closed({m, 1.0, 3.0, 2.0});
  return std::abs(a - b) / std::abs(a);
}

}  // namespace hmom
