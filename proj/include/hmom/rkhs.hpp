#pragma once

#include <functional>
#include <vector>

#include "hmom/errors.hpp"

namespace hmom {

/// Dense univariate polynomial, coefficients in increasing degree order.
struct Poly {
  std::vector<double> c;

  double operator()(double r) const {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * r + c[i];
    return v;
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  Poly derivative() const;
};

/// Shifted Legendre polynomial P_k on [0,1] (P_k(1) = 1). Supported k <= 20.
Poly legendre_shifted(int k);

/// Q_k(r) = (r - r^2) P_k''(r); the natural basis for functions vanishing at
/// the endpoints. Requires k >= 2.
Poly legendre_q(int k);

/// Recurrence-based point evaluations; stable where the coefficient form of
/// the same polynomials loses digits to cancellation.
double legendre_shifted_value(int k, double r);
double legendre_q_value(int k, double r);

/// int_0^1 Q_j Q_k dr = delta_{jk} (k+2)! / ((2k+1)(k-2)!).
double q_inner_exact(int k);

/// int_0^1 r^j Q_k(r) dr in closed form:
/// j = 0: 1 + (-1)^k;   1 <= j < k: 1;   j >= k: 1 - a_{jk}.
double q_moment_integral(int j, int k);

/// a_{jk} = (j + k + k^2) G(j+2) G(j) / (G(j+k+2) G(j-k+1)), j >= k >= 2.
double a_coefficient(int j, int k);

/// Odd-order kernel H(tstar, t) = Jpou(t) - Jcol(tstar,t) - Jcou(tstar,t),
/// t in I^{m-1}, for the order 2m-1 body.
double kernel_H(int m, double tstar, const std::vector<double>& t);

/// One-variable marginal of H over the remaining m-2 node variables.
double kernel_H_marginal(int m, double tstar, double s, int quad_order = 64);

/// Normalized marginal: (1/Vol(M^{2m-1})) (2/((2m-1)!(m-2)!)) Hbar. m >= 2.
double kernel_H_hat(int m, double tstar, double s, int quad_order = 64);

/// Even-order analogue built from the Cel/Ceu kernels:
/// Gbar(tstar,s) = Jcel-bar(0,s) - Jcel-bar(tstar,s) - (m-1) Jceu-bar(tstar,s).
double kernel_G_marginal(int m, double tstar, double s, int quad_order = 64);

/// Normalized: (1/Vol(M^{2m})) (2/((2m)!(m-1)!)) Gbar. m >= 1.
double kernel_G_hat(int m, double tstar, double s, int quad_order = 64);

/// Apply the normalized kernel to phi (phi must vanish at 0 and 1, checked
/// to 1e-12): returns int phi(s) Khat(tstar,s) ds, which reproduces phi(tstar)
/// for polynomials of degree <= 2m-1 (odd) resp. <= 2m (even).
double reproduce_odd(const std::function<double(double)>& phi, int m, double tstar,
                     int quad_order = 128);
double reproduce_even(const std::function<double(double)>& phi, int m, double tstar,
                      int quad_order = 128);

/// Christoffel-Darboux form of the same odd-order kernel:
/// (r1-r1^2)(r2-r2^2)/(2(2m-1)2m(2m+1)) *
///   [P''_{2m}(r1)P''_{2m-1}(r2) - P''_{2m-1}(r1)P''_{2m}(r2)] / (r1-r2),
/// with the confluent limit taken when |r1-r2| < 1e-6.
double cd_kernel(int m, double r1, double r2);

/// Symmetric-function multiplier of the biorthogonality identity:
/// htilde_k(t) = sum_{j=k}^{2m-1} (-1)^{j+1} a_{jk} E_{2m-1-j}(t)
/// where E_i(t) = sum_{i1+i2=i} e_{i1}(t) e_{i2}(t) over the m-1 nodes.
double htilde(int m, int k, const std::vector<double>& t);

/// Biorthogonality integral over I^{m-1}:
///   B_{jk} = int htilde_k(t) (sum_l Q_j(t_l)) prod t^2 Delta^4 dt.
double biorth_integral(int m, int j, int k, int quad_order = 64);

/// Expected diagonal: Vol(M^{2m-1}) (2m-1)! (m-1)! (k+2)! / ((8k+4)(k-2)!).
double biorth_expected(int m, int k);

}  // namespace hmom
