#pragma once

#include "hmom/jacobians.hpp"

namespace hmom {

struct SelbergParams {
  int n = 1;          // number of integration variables
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
};

/// Closed-form Selberg integral
///   S_n(a,b,g) = prod_{j=0}^{n-1} G(a+jg) G(b+jg) G(1+(j+1)g)
///                               / (G(a+b+(n+j-1)g) G(1+g)).
/// Throws DomainError outside the convergence region
/// a > 0, b > 0, g > -min(1/n, a/(n-1), b/(n-1)).
double selberg_closed(const SelbergParams& p);

/// Optional symmetric weight multiplying the Selberg density.
enum class SelbergWeight { None, SumInverse /* sum_j 1/t_j */ };

/// Direct numerical evaluation of the (optionally weighted) Selberg integral.
/// Quadrature (tensor Gauss-Legendre) needs integer-polynomial exponents to
/// be exact and supports n <= 4; Monte Carlo handles the rest.
IntegrationResult selberg_numeric(const SelbergParams& p,
                                  SelbergWeight weight = SelbergWeight::None,
                                  IntegrationMethod method = IntegrationMethod::Quadrature,
                                  int quad_order = 96, long long mc_samples = 400000,
                                  unsigned long long seed = 1);

/// Residuals (relative) of the two power-sum evaluation identities:
///   int sum 1/t_j prod t^2(1-t)^2 D^4 over I^m = (S_m(5,1,2)-S_m(3,3,2))/2
///   int sum 1/t_j prod t^2        D^4 over I^m = (m/2) S_{m-1}(5,3,2)
double weighted_identity_residual_sym(int m, int quad_order = 96);
double weighted_identity_residual_low(int m, int quad_order = 96);

/// Residuals of the volume consistency identities between Selberg values:
///   S_m(1,1,2)/m! = S_{m-1}(3,3,2)/(m-1)!   and   S_m(3,1,2) = S_m(1,3,2).
double volume_consistency_residual_odd(int m);
double volume_consistency_residual_even(int m);

}  // namespace hmom
