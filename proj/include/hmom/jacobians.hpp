#pragma once

#include <functional>
#include <vector>

#include "hmom/errors.hpp"

namespace hmom {

/// Parametrization charts of the moment body by representation data.
/// P* charts use principal supports, C* charts carry a marked atom at tstar.
/// o/e = odd/even target order, l/u = lower/upper flavor.
enum class JacobianKind { Pol, Pou, Pel, Peu, Col, Cou, Cel, Ceu };

/// Number of free node coordinates of a chart with parameter m.
int node_dimension(JacobianKind kind, int m);

/// Target moment order of the chart: 2m-1 for P*l/P*u odd charts, 2m for even.
int target_order(JacobianKind kind, int m);

/// Whether the chart carries a tstar parameter.
bool has_tstar(JacobianKind kind);

/// Closed-form Jacobian factor J(t) (node part only; the weight-product
/// factor of the full chart determinant is reported separately by
/// weight_multiplier). Nodes need not be sorted.
double jacobian_closed_form(JacobianKind kind, int m, const std::vector<double>& t,
                            double tstar = 0.0);

/// Product of weight coordinates multiplying jacobian_closed_form in the
/// full chart determinant, evaluated at the given weight coordinates.
double weight_multiplier(JacobianKind kind, int m, const std::vector<double>& lambda);

/// |det D phi| of the chart map computed by central finite differences
/// (h = 1e-6) and LU factorization; the reference oracle for the closed forms.
double jacobian_numeric(JacobianKind kind, int m, const std::vector<double>& lambda,
                        const std::vector<double>& t, double tstar = 0.0);

/// Relative error of the confluent Vandermonde identity
///   d^m/ds_1..ds_m Delta(t_1,s_1,...,t_m,s_m) |_{s=t} = Delta_m(t)^4
/// evaluated by nested central differences with Richardson extrapolation.
double karlin_shapley_residual(int m, const std::vector<double>& t);

enum class IntegrationMethod { Quadrature, MonteCarlo };

struct IntegrationResult {
  double value = 0.0;
  double stderr_est = 0.0;  // 0 for quadrature
};

/// Volume of the order-n moment body via a principal chart.
IntegrationResult volume_by_cov(JacobianKind kind, int m, IntegrationMethod method,
                                int quad_order = 96, long long mc_samples = 200000,
                                unsigned long long seed = 1);

/// Volume of the order-n body via the canonical charts at fixed tstar:
/// n odd uses Col+Cou, n even uses Cel+Ceu. Must agree with volume(n)
/// for every tstar.
IntegrationResult canonical_volume_identity(int n, double tstar,
                                            IntegrationMethod method,
                                            int quad_order = 96,
                                            long long mc_samples = 200000,
                                            unsigned long long seed = 1);

/// Mean of the i-th moment coordinate (i = 0 gives the volume itself)
/// under the flat measure on the order-n body, computed by integrating the
/// canonical charts at tstar. i ranges over 0..n.
double mean_moment(int n, int i, double tstar, int quad_order = 96);

/// Tensor-product Gauss-Legendre integral of f over [0,1]^dim.
double integrate_cube(int dim, int order, const std::function<double(const double*)>& f);

}  // namespace hmom
