#include "hmom/jacobians.hpp"

#include <cmath>
#include <complex>

#include "hmom/linalg.hpp"
#include "hmom/moment_core.hpp"
#include "hmom/rng.hpp"
#include "hmom/special.hpp"

namespace hmom {

namespace {

double factorial(int n) { return std::exp(log_gamma(n + 1.0)); }

double vandermonde(const std::vector<double>& x) {
  double v = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = j + 1; k < x.size(); ++k) v *= x[k] - x[j];
  return v;
}

double vandermonde4(const std::vector<double>& t) {
  double v = vandermonde(t);
  return v * v * v * v;
}

void check_nodes(const std::vector<double>& t, int expect) {
  if (static_cast<int>(t.size()) != expect)
    throw DimensionMismatch("jacobian: node vector has wrong length");
}

// Chart map phi(lambda, t) -> (q_1..q_n). Conventions per kind:
//   Pol: support {t_1..t_m},                weights (l_1..l_{m-1}, rest)
//   Pou: support {0, t_1..t_{m-1}, 1},      weights (l_0, l_1..l_{m-1}, rest at 1)
//   Pel: support {0, t_1..t_m},             weights (rest at 0, l_1..l_m)
//   Peu: support {t_1..t_m, 1},             weights (l_1..l_m, rest at 1)
//   Col: support {0, t_1..t_{m-1}, tstar},  weights (l_0, l_1..l_{m-1}, rest at tstar)
//   Cou: support {t_1..t_{m-1}, 1, tstar},  weights (l_1..l_{m-1}, l_m, rest at tstar)
//   Cel: support {0?, t_1..t_m, tstar},     weights (l_1..l_m, rest at tstar)
//   Ceu: support {0, t_1..t_{m-1}, 1, tstar}, weights (l_0, l_1..l_{m-1}, l_m, rest)
// Templated over the scalar so the complex-step oracle can reuse it.
template <typename T>
void chart_support(JacobianKind kind, int m, const std::vector<T>& lambda,
                   const std::vector<T>& t, double tstar,
                   std::vector<T>& nodes, std::vector<T>& weights) {
  nodes.clear();
  weights.clear();
  T rest = T(1.0);
  for (const T& l : lambda) rest -= l;
  auto push = [&](T node, T w) {
    nodes.push_back(node);
    weights.push_back(w);
  };
  switch (kind) {
    case JacobianKind::Pol:
      for (int j = 0; j < m - 1; ++j) push(t[j], lambda[j]);
      push(t[m - 1], rest);
      break;
    case JacobianKind::Pou:
      push(0.0, lambda[0]);
      for (int j = 0; j < m - 1; ++j) push(t[j], lambda[j + 1]);
      push(1.0, rest);
      break;
    case JacobianKind::Pel:
      push(0.0, rest);
      for (int j = 0; j < m; ++j) push(t[j], lambda[j]);
      break;
    case JacobianKind::Peu:
      for (int j = 0; j < m; ++j) push(t[j], lambda[j]);
      push(1.0, rest);
      break;
    case JacobianKind::Col:
      push(0.0, lambda[0]);
      for (int j = 0; j < m - 1; ++j) push(t[j], lambda[j + 1]);
      push(tstar, rest);
      break;
    case JacobianKind::Cou:
      for (int j = 0; j < m - 1; ++j) push(t[j], lambda[j]);
      push(1.0, lambda[m - 1]);
      push(tstar, rest);
      break;
    case JacobianKind::Cel:
      for (int j = 0; j < m; ++j) push(t[j], lambda[j]);
      push(tstar, rest);
      break;
    case JacobianKind::Ceu:
      push(0.0, lambda[0]);
      for (int j = 0; j < m - 1; ++j) push(t[j], lambda[j + 1]);
      push(1.0, lambda[m]);
      push(tstar, rest);
      break;
  }
}

int lambda_dimension(JacobianKind kind, int m) {
  switch (kind) {
    case JacobianKind::Pol: return m - 1;
    case JacobianKind::Pou: return m;
    case JacobianKind::Pel: return m;
    case JacobianKind::Peu: return m;
    case JacobianKind::Col: return m;
    case JacobianKind::Cou: return m;
    case JacobianKind::Cel: return m;
    case JacobianKind::Ceu: return m + 1;
  }
  return 0;
}

}  // namespace

int node_dimension(JacobianKind kind, int m) {
  switch (kind) {
    case JacobianKind::Pol: return m;
    case JacobianKind::Pou: return m - 1;
    case JacobianKind::Pel: return m;
    case JacobianKind::Peu: return m;
    case JacobianKind::Col: return m - 1;
    case JacobianKind::Cou: return m - 1;
    case JacobianKind::Cel: return m;
    case JacobianKind::Ceu: return m - 1;
  }
  return 0;
}

int target_order(JacobianKind kind, int m) {
  switch (kind) {
    case JacobianKind::Pol:
    case JacobianKind::Pou:
    case JacobianKind::Col:
    case JacobianKind::Cou:
      return 2 * m - 1;
    default:
      return 2 * m;
  }
}

bool has_tstar(JacobianKind kind) {
  switch (kind) {
    case JacobianKind::Col:
    case JacobianKind::Cou:
    case JacobianKind::Cel:
    case JacobianKind::Ceu:
      return true;
    default:
      return false;
  }
}

double jacobian_closed_form(JacobianKind kind, int m, const std::vector<double>& t,
                            double tstar) {
  if (m < 1) throw DomainError("jacobian: m >= 1 required");
  check_nodes(t, node_dimension(kind, m));
  auto prod_pow2 = [&](auto f) {
    double p = 1.0;
    for (double x : t) {
      double v = f(x);
      p *= v * v;
    }
    return p;
  };
  double d4 = vandermonde4(t);
  switch (kind) {
    case JacobianKind::Pol:
      return d4;
    case JacobianKind::Pou:
      return prod_pow2([](double x) { return x * (1.0 - x); }) * d4;
    case JacobianKind::Pel:
      return prod_pow2([](double x) { return x; }) * d4;
    case JacobianKind::Peu:
      return prod_pow2([](double x) { return 1.0 - x; }) * d4;
    case JacobianKind::Col:
      return tstar * prod_pow2([&](double x) { return x - tstar; }) *
             prod_pow2([](double x) { return x; }) * d4;
    case JacobianKind::Cou:
      return (1.0 - tstar) * prod_pow2([&](double x) { return x - tstar; }) *
             prod_pow2([](double x) { return 1.0 - x; }) * d4;
    case JacobianKind::Cel:
      return prod_pow2([&](double x) { return x - tstar; }) * d4;
    case JacobianKind::Ceu:
      return tstar * (1.0 - tstar) * prod_pow2([&](double x) { return x - tstar; }) *
             prod_pow2([](double x) { return x * (1.0 - x); }) * d4;
  }
  return 0.0;
}

double weight_multiplier(JacobianKind kind, int m, const std::vector<double>& lambda) {
  if (static_cast<int>(lambda.size()) != lambda_dimension(kind, m))
    throw DimensionMismatch("weight_multiplier: lambda has wrong length");
  double rest = 1.0;
  for (double l : lambda) rest -= l;
  double p = 1.0;
  switch (kind) {
    case JacobianKind::Pol:
      for (double l : lambda) p *= l;
      return p * rest;
    case JacobianKind::Pou:
    case JacobianKind::Col:
      for (int j = 1; j < m; ++j) p *= lambda[j];
      return p;
    case JacobianKind::Cou:
      for (int j = 0; j < m - 1; ++j) p *= lambda[j];
      return p;
    case JacobianKind::Pel:
    case JacobianKind::Peu:
    case JacobianKind::Cel:
      for (double l : lambda) p *= l;
      return p;
    case JacobianKind::Ceu:
      for (int j = 1; j < m; ++j) p *= lambda[j];
      return p;
  }
  return 0.0;
}

double jacobian_numeric(JacobianKind kind, int m, const std::vector<double>& lambda,
                        const std::vector<double>& t, double tstar) {
  const int nl = lambda_dimension(kind, m);
  const int nt = node_dimension(kind, m);
  if (static_cast<int>(lambda.size()) != nl || static_cast<int>(t.size()) != nt)
    throw DimensionMismatch("jacobian_numeric: parameter lengths");
  const int n = target_order(kind, m);
  const int dim = nl + nt;
  if (dim != n) throw DimensionMismatch("jacobian_numeric: chart is not square");

  // Complex-step derivative in extended precision: the map is entire, so
  // Im phi(x + ih e_c)/h is the column derivative without subtractive
  // cancellation, and the long-double LU keeps the determinant usable even
  // when clustered nodes make it badly conditioned.
  using real = long double;
  using cplx = std::complex<real>;
  auto phi = [&](const std::vector<cplx>& x, std::vector<cplx>& q) {
    std::vector<cplx> l(x.begin(), x.begin() + nl);
    std::vector<cplx> tt(x.begin() + nl, x.end());
    std::vector<cplx> nodes, weights;
    chart_support(kind, m, l, tt, tstar, nodes, weights);
    q.assign(n, cplx(0.0));
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      cplx pw = weights[j];
      for (int i = 0; i < n; ++i) {
        pw *= nodes[j];
        q[i] += pw;
      }
    }
  };

  std::vector<cplx> x(lambda.begin(), lambda.end());
  x.insert(x.end(), t.begin(), t.end());
  const real h = 1e-100L;
  std::vector<real> J(static_cast<std::size_t>(dim) * dim);
  std::vector<cplx> q;
  for (int c = 0; c < dim; ++c) {
    x[c] += cplx(0.0L, h);
    phi(x, q);
    x[c] -= cplx(0.0L, h);
    for (int r = 0; r < dim; ++r) J[r * dim + c] = q[r].imag() / h;
  }
  // Plain LU with partial pivoting on the long-double matrix.
  real det = 1.0L;
  for (int c = 0; c < dim; ++c) {
    int piv = c;
    for (int r = c + 1; r < dim; ++r)
      if (std::abs(J[r * dim + c]) > std::abs(J[piv * dim + c])) piv = r;
    if (J[piv * dim + c] == 0.0L) return 0.0;
    if (piv != c) {
      for (int k = 0; k < dim; ++k) std::swap(J[piv * dim + k], J[c * dim + k]);
      det = -det;
    }
    det *= J[c * dim + c];
    for (int r = c + 1; r < dim; ++r) {
      real f = J[r * dim + c] / J[c * dim + c];
      for (int k = c + 1; k < dim; ++k) J[r * dim + k] -= f * J[c * dim + k];
    }
  }
  return static_cast<double>(std::abs(det));
}

double karlin_shapley_residual(int m, const std::vector<double>& t) {
  check_nodes(t, m);
  // f(s) = Vandermonde of the interleaved sequence (t_1, s_1, ..., t_m, s_m).
  auto f = [&](const std::vector<double>& s) {
    std::vector<double> x(2 * m);
    for (int j = 0; j < m; ++j) {
      x[2 * j] = t[j];
      x[2 * j + 1] = s[j];
    }
    return vandermonde(x);
  };
  // Mixed m-th partial at s = t by the 2^m corner stencil.
  auto mixed = [&](double h) {
    double acc = 0.0;
    const int corners = 1 << m;
    std::vector<double> s(m);
    for (int mask = 0; mask < corners; ++mask) {
      int sign = 1;
      for (int j = 0; j < m; ++j) {
        if (mask & (1 << j)) {
          s[j] = t[j] + h;
        } else {
          s[j] = t[j] - h;
          sign = -sign;
        }
      }
      acc += sign * f(s);
    }
    return acc / std::pow(2.0 * h, m);
  };
  const double h = 4e-3;
  double d = (4.0 * mixed(h / 2.0) - mixed(h)) / 3.0;  // Richardson, O(h^4)
  double expect = vandermonde4(t);
  return std::abs(d - expect) / std::max(1.0, std::abs(expect));
}

double integrate_cube(int dim, int order,
                      const std::function<double(const double*)>& f) {
  if (dim == 0) return f(nullptr);
  QuadratureRule rule = gauss_legendre(order);
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  KahanSum total;
  for (;;) {
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      x[d] = rule.nodes[idx[d]];
      w *= rule.weights[idx[d]];
    }
    total.add(w * f(x.data()));
    int d = 0;
    while (d < dim && ++idx[d] == order) idx[d++] = 0;
    if (d == dim) break;
  }
  return total.value();
}

namespace {

IntegrationResult integrate_dispatch(int dim,
                                     const std::function<double(const double*)>& f,
                                     IntegrationMethod method, int quad_order,
                                     long long mc_samples, unsigned long long seed) {
  IntegrationResult out;
  if (method == IntegrationMethod::Quadrature || dim == 0) {
    out.value = integrate_cube(dim, quad_order, f);
    return out;
  }
  // Deterministic Monte Carlo over the unit cube with fixed-size blocks so
  // the result does not depend on scheduling.
  KahanSum sum, sumsq;
  std::vector<double> x(dim);
  for (long long i = 0; i < mc_samples; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    for (int d = 0; d < dim; ++d) x[d] = rng.uniform();
    double v = f(x.data());
    sum.add(v);
    sumsq.add(v * v);
  }
  double mean = sum.value() / mc_samples;
  double var = std::max(0.0, sumsq.value() / mc_samples - mean * mean);
  out.value = mean;
  out.stderr_est = std::sqrt(var / mc_samples);
  return out;
}

}  // namespace

IntegrationResult volume_by_cov(JacobianKind kind, int m, IntegrationMethod method,
                                int quad_order, long long mc_samples,
                                unsigned long long seed) {
  if (has_tstar(kind))
    throw DomainError("volume_by_cov: use canonical_volume_identity for C* charts");
  const int n = target_order(kind, m);
  const int dim = node_dimension(kind, m);
  double c;
  switch (kind) {
    case JacobianKind::Pol: c = 1.0 / (factorial(2 * m - 1) * factorial(m)); break;
    case JacobianKind::Pou: c = 1.0 / (factorial(2 * m - 1) * factorial(m - 1)); break;
    case JacobianKind::Pel:
    case JacobianKind::Peu: c = 1.0 / (factorial(2 * m) * factorial(m)); break;
    default: c = 0.0; break;
  }
  auto f = [&](const double* x) {
    std::vector<double> t(x, x + dim);
    return jacobian_closed_form(kind, m, t);
  };
  IntegrationResult r = integrate_dispatch(dim, f, method, quad_order, mc_samples, seed);
  r.value *= c;
  r.stderr_est *= c;
  (void)n;
  return r;
}

IntegrationResult canonical_volume_identity(int n, double tstar,
                                            IntegrationMethod method, int quad_order,
                                            long long mc_samples,
                                            unsigned long long seed) {
  if (n < 1) throw DomainError("canonical_volume_identity: order must be positive");
  if (!(tstar >= 0.0 && tstar <= 1.0))
    throw DomainError("canonical_volume_identity: tstar outside [0,1]");
  IntegrationResult out;
  if (n % 2 == 1) {
    const int m = (n + 1) / 2;
    const double c = 1.0 / (factorial(2 * m - 1) * factorial(m - 1));
    auto f = [&](const double* x) {
      std::vector<double> t(x, x + (m - 1));
      return jacobian_closed_form(JacobianKind::Col, m, t, tstar) +
             jacobian_closed_form(JacobianKind::Cou, m, t, tstar);
    };
    IntegrationResult r =
        integrate_dispatch(m - 1, f, method, quad_order, mc_samples, seed);
    out.value = c * r.value;
    out.stderr_est = c * r.stderr_est;
  } else {
    const int m = n / 2;
    const double c1 = 1.0 / (factorial(2 * m) * factorial(m));
    const double c2 = 1.0 / (factorial(2 * m) * factorial(m - 1));
    auto f1 = [&](const double* x) {
      std::vector<double> t(x, x + m);
      return jacobian_closed_form(JacobianKind::Cel, m, t, tstar);
    };
    auto f2 = [&](const double* x) {
      std::vector<double> t(x, x + (m - 1));
      return jacobian_closed_form(JacobianKind::Ceu, m, t, tstar);
    };
    IntegrationResult r1 =
        integrate_dispatch(m, f1, method, quad_order, mc_samples, seed);
    IntegrationResult r2 =
        integrate_dispatch(m - 1, f2, method, quad_order, mc_samples, seed ^ 0x5bd1e995u);
    out.value = c1 * r1.value + c2 * r2.value;
    out.stderr_est = std::hypot(c1 * r1.stderr_est, c2 * r2.stderr_est);
  }
  return out;
}

double mean_moment(int n, int i, double tstar, int quad_order) {
  if (n < 1) throw DomainError("mean_moment: order must be positive");
  if (i < 0 || i > n) throw DomainError("mean_moment: moment index out of range");
  if (!(tstar >= 0.0 && tstar <= 1.0))
    throw DomainError("mean_moment: tstar outside [0,1]");
  const double vol = volume(n);
  const double ts_i = i == 0 ? 1.0 : std::pow(tstar, i);
  auto power_sum = [&](const std::vector<double>& t) {
    double s = 0.0;
    for (double x : t) s += i == 0 ? 1.0 : std::pow(x, i);
    return s;
  };
  if (n % 2 == 1) {
    const int m = (n + 1) / 2;
    const double c = 1.0 / (factorial(2 * m) * factorial(m - 1));
    auto int_of = [&](auto g) {
      return integrate_cube(m - 1, quad_order, [&](const double* x) {
        std::vector<double> t(x, x + (m - 1));
        return g(t);
      });
    };
    double I_ol = int_of([&](const std::vector<double>& t) {
      return jacobian_closed_form(JacobianKind::Col, m, t, tstar);
    });
    double I_ou = int_of([&](const std::vector<double>& t) {
      return jacobian_closed_form(JacobianKind::Cou, m, t, tstar);
    });
    double I_sum = int_of([&](const std::vector<double>& t) {
      return power_sum(t) * (jacobian_closed_form(JacobianKind::Col, m, t, tstar) +
                             jacobian_closed_form(JacobianKind::Cou, m, t, tstar));
    });
    double v = ts_i / (2.0 * m) * vol + c * ((i == 0 ? 1.0 : 0.0) * I_ol + I_ou) +
               2.0 * c * I_sum;
    return v;
  }
  const int m = n / 2;
  const double c_eu = 1.0 / (factorial(2 * m + 1) * factorial(m - 1));
  const double c_el = 1.0 / (factorial(2 * m + 1) * factorial(m));
  double I_eu = integrate_cube(m - 1, quad_order, [&](const double* x) {
    std::vector<double> t(x, x + (m - 1));
    return jacobian_closed_form(JacobianKind::Ceu, m, t, tstar);
  });
  double I_el_sum = integrate_cube(m, quad_order, [&](const double* x) {
    std::vector<double> t(x, x + m);
    return power_sum(t) * jacobian_closed_form(JacobianKind::Cel, m, t, tstar);
  });
  double I_eu_sum = integrate_cube(m - 1, quad_order, [&](const double* x) {
    std::vector<double> t(x, x + (m - 1));
    return power_sum(t) * jacobian_closed_form(JacobianKind::Ceu, m, t, tstar);
  });
  return ts_i / (2.0 * m + 1.0) * vol + ((i == 0 ? 1.0 : 0.0) + 1.0) * c_eu * I_eu +
         2.0 * c_el * I_el_sum + 2.0 * c_eu * I_eu_sum;
}

}  // namespace hmom
