#include "hmom/rkhs.hpp"

#include <cmath>

#include "hmom/jacobians.hpp"
#include "hmom/moment_core.hpp"
#include "hmom/special.hpp"

namespace hmom {

namespace {

double factorial(double n) { return std::exp(log_gamma(n + 1.0)); }

}  // namespace

Poly Poly::derivative() const {
  Poly d;
  if (c.size() <= 1) {
    d.c = {0.0};
    return d;
  }
  d.c.resize(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d.c[i - 1] = i * c[i];
  return d;
}

Poly legendre_shifted(int k) {
  if (k < 0 || k > 20) throw DomainError("legendre_shifted: k in 0..20 required");
  // P_k(r) = sum_i (-1)^i C(k,i) (2k-i)! / (k! (k-i)!) r^{k-i}
  Poly p;
  p.c.assign(k + 1, 0.0);
  for (int i = 0; i <= k; ++i) {
    double coef = binomial(k, i) * factorial(2 * k - i) /
                  (factorial(k) * factorial(k - i));
    p.c[k - i] = (i % 2 == 0 ? 1.0 : -1.0) * coef;
  }
  return p;
}

Poly legendre_q(int k) {
  if (k < 2) throw DomainError("legendre_q: k >= 2 required");
  Poly pdd = legendre_shifted(k).derivative().derivative();
  // multiply by (r - r^2)
  Poly q;
  q.c.assign(pdd.c.size() + 2, 0.0);
  for (std::size_t i = 0; i < pdd.c.size(); ++i) {
    q.c[i + 1] += pdd.c[i];
    q.c[i + 2] -= pdd.c[i];
  }
  return q;
}

double legendre_shifted_value(int k, double r) {
  if (k < 0) throw DomainError("legendre_shifted_value: k >= 0 required");
  // Three-term recurrence in y = 2r - 1.
  double y = 2.0 * r - 1.0;
  double pm1 = 1.0, p = y;
  if (k == 0) return pm1;
  for (int j = 1; j < k; ++j) {
    double next = ((2.0 * j + 1.0) * y * p - j * pm1) / (j + 1.0);
    pm1 = p;
    p = next;
  }
  return p;
}

double legendre_q_value(int k, double r) {
  if (k < 2) throw DomainError("legendre_q_value: k >= 2 required");
  // Differentiate the recurrence twice in y = 2r - 1; d^2/dr^2 = 4 d^2/dy^2.
  double y = 2.0 * r - 1.0;
  double p0 = 1.0, p1 = y;
  double d0 = 0.0, d1 = 1.0;
  double s0 = 0.0, s1 = 0.0;
  for (int j = 1; j < k; ++j) {
    double p2 = ((2.0 * j + 1.0) * y * p1 - j * p0) / (j + 1.0);
    double d2 = ((2.0 * j + 1.0) * (p1 + y * d1) - j * d0) / (j + 1.0);
    double s2 = ((2.0 * j + 1.0) * (2.0 * d1 + y * s1) - j * s0) / (j + 1.0);
    p0 = p1; p1 = p2;
    d0 = d1; d1 = d2;
    s0 = s1; s1 = s2;
  }
  return (r - r * r) * 4.0 * s1;
}

double q_inner_exact(int k) {
  if (k < 2) throw DomainError("q_inner_exact: k >= 2 required");
  return factorial(k + 2.0) / ((2.0 * k + 1.0) * factorial(k - 2.0));
}

double a_coefficient(int j, int k) {
  if (k < 2 || j < k) throw DomainError("a_coefficient: j >= k >= 2 required");
  return (j + k + static_cast<double>(k) * k) *
         std::exp(log_gamma(j + 2.0) + log_gamma(static_cast<double>(j)) -
                  log_gamma(j + k + 2.0) - log_gamma(j - k + 1.0));
}

double q_moment_integral(int j, int k) {
  if (k < 2 || j < 0) throw DomainError("q_moment_integral: k >= 2, j >= 0 required");
  if (j == 0) return 1.0 + (k % 2 == 0 ? 1.0 : -1.0);
  if (j < k) return 1.0;
  return 1.0 - a_coefficient(j, k);
}

double kernel_H(int m, double tstar, const std::vector<double>& t) {
  if (m < 1) throw DomainError("kernel_H: m >= 1 required");
  return jacobian_closed_form(JacobianKind::Pou, m, t) -
         jacobian_closed_form(JacobianKind::Col, m, t, tstar) -
         jacobian_closed_form(JacobianKind::Cou, m, t, tstar);
}

double kernel_H_marginal(int m, double tstar, double s, int quad_order) {
  if (m < 2) throw DomainError("kernel_H_marginal: m >= 2 required");
  return integrate_cube(m - 2, quad_order, [&](const double* x) {
    std::vector<double> t(m - 1);
    t[0] = s;
    for (int d = 0; d < m - 2; ++d) t[d + 1] = x[d];
    return kernel_H(m, tstar, t);
  });
}

double kernel_H_hat(int m, double tstar, double s, int quad_order) {
  const double norm =
      2.0 / (volume(2 * m - 1) * factorial(2.0 * m - 1.0) * factorial(m - 2.0));
  return norm * kernel_H_marginal(m, tstar, s, quad_order);
}

double kernel_G_marginal(int m, double tstar, double s, int quad_order) {
  if (m < 1) throw DomainError("kernel_G_marginal: m >= 1 required");
  auto cel_bar = [&](double ts) {
    return integrate_cube(m - 1, quad_order, [&](const double* x) {
      std::vector<double> t(m);
      t[0] = s;
      for (int d = 0; d < m - 1; ++d) t[d + 1] = x[d];
      return jacobian_closed_form(JacobianKind::Cel, m, t, ts);
    });
  };
  double v = cel_bar(0.0) - cel_bar(tstar);
  if (m >= 2) {
    double ceu_bar = integrate_cube(m - 2, quad_order, [&](const double* x) {
      std::vector<double> t(m - 1);
      t[0] = s;
      for (int d = 0; d < m - 2; ++d) t[d + 1] = x[d];
      return jacobian_closed_form(JacobianKind::Ceu, m, t, tstar);
    });
    v -= (m - 1.0) * ceu_bar;
  }
  return v;
}

double kernel_G_hat(int m, double tstar, double s, int quad_order) {
  const double norm =
      2.0 / (volume(2 * m) * factorial(2.0 * m) * factorial(m - 1.0));
  return norm * kernel_G_marginal(m, tstar, s, quad_order);
}

namespace {

void check_vanishing(const std::function<double(double)>& phi) {
  if (std::abs(phi(0.0)) > 1e-12 || std::abs(phi(1.0)) > 1e-12)
    throw DomainError("reproduce: phi must vanish at 0 and 1");
}

}  // namespace

double reproduce_odd(const std::function<double(double)>& phi, int m, double tstar,
                     int quad_order) {
  check_vanishing(phi);
  QuadratureRule rule = gauss_legendre(quad_order);
  KahanSum acc;
  for (int i = 0; i < quad_order; ++i)
    acc.add(rule.weights[i] * phi(rule.nodes[i]) *
            kernel_H_hat(m, tstar, rule.nodes[i], quad_order));
  return acc.value();
}

double reproduce_even(const std::function<double(double)>& phi, int m, double tstar,
                      int quad_order) {
  check_vanishing(phi);
  QuadratureRule rule = gauss_legendre(quad_order);
  KahanSum acc;
  for (int i = 0; i < quad_order; ++i)
    acc.add(rule.weights[i] * phi(rule.nodes[i]) *
            kernel_G_hat(m, tstar, rule.nodes[i], quad_order));
  return acc.value();
}

double cd_kernel(int m, double r1, double r2) {
  if (m < 1) throw DomainError("cd_kernel: m >= 1 required");
  Poly f = legendre_shifted(2 * m).derivative().derivative();
  Poly g = legendre_shifted(2 * m - 1).derivative().derivative();
  const double pref = (r1 - r1 * r1) * (r2 - r2 * r2) /
                      (2.0 * (2.0 * m - 1.0) * (2.0 * m) * (2.0 * m + 1.0));
  double ratio;
  if (std::abs(r1 - r2) < 1e-6) {
    Poly fd = f.derivative();
    Poly gd = g.derivative();
    double r = 0.5 * (r1 + r2);
    ratio = fd(r) * g(r) - gd(r) * f(r);
  } else {
    ratio = (f(r1) * g(r2) - g(r1) * f(r2)) / (r1 - r2);
  }
  return pref * ratio;
}

double htilde(int m, int k, const std::vector<double>& t) {
  if (m < 2) throw DomainError("htilde: m >= 2 required");
  if (k < 2 || k > 2 * m - 1) throw DomainError("htilde: k in 2..2m-1 required");
  if (static_cast<int>(t.size()) != m - 1)
    throw DimensionMismatch("htilde: t must have m-1 entries");
  // elementary symmetric polynomials of the nodes
  std::vector<double> e(m, 0.0);
  e[0] = 1.0;
  for (int idx = 0; idx < m - 1; ++idx)
    for (int d = idx + 1; d >= 1; --d) e[d] += t[idx] * e[d - 1];
  // E_i = sum_{i1+i2=i} e_{i1} e_{i2} (elementary symmetric of doubled nodes)
  auto E = [&](int i) {
    double s = 0.0;
    for (int i1 = 0; i1 <= i; ++i1) {
      int i2 = i - i1;
      if (i1 <= m - 1 && i2 <= m - 1) s += e[i1] * e[i2];
    }
    return s;
  };
  double acc = 0.0;
  for (int j = k; j <= 2 * m - 1; ++j)
    acc += (j % 2 == 0 ? -1.0 : 1.0) * a_coefficient(j, k) * E(2 * m - 1 - j);
  return acc;
}

double biorth_integral(int m, int j, int k, int quad_order) {
  if (m < 2) throw DomainError("biorth_integral: m >= 2 required");
  if (j < 2 || j > 2 * m - 1 || k < 2 || k > 2 * m - 1)
    throw DomainError("biorth_integral: indices in 2..2m-1 required");
  Poly qj = legendre_q(j);
  return integrate_cube(m - 1, quad_order, [&](const double* x) {
    std::vector<double> t(x, x + (m - 1));
    double qsum = 0.0;
    double w = 1.0;
    for (double v : t) {
      qsum += qj(v);
      w *= v * v;
    }
    double d4 = 1.0;
    for (int a = 0; a < m - 1; ++a)
      for (int b = a + 1; b < m - 1; ++b) {
        double diff = t[b] - t[a];
        d4 *= diff * diff * diff * diff;
      }
    return htilde(m, k, t) * qsum * w * d4;
  });
}

double biorth_expected(int m, int k) {
  if (m < 2 || k < 2 || k > 2 * m - 1)
    throw DomainError("biorth_expected: invalid indices");
  return volume(2 * m - 1) * factorial(2.0 * m - 1.0) * factorial(m - 1.0) *
         factorial(k + 2.0) / ((8.0 * k + 4.0) * factorial(k - 2.0));
}

}  // namespace hmom
