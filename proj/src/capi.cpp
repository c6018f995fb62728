#include "hausmoment.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "hmom/brittleness.hpp"
#include "hmom/jacobians.hpp"
#include "hmom/moment_core.hpp"
#include "hmom/representations.hpp"
#include "hmom/rkhs.hpp"
#include "hmom/selberg.hpp"
#include "hmom/special.hpp"

struct hm_measure {
  hmom::DiscreteMeasure mu;
};

namespace {

thread_local std::string g_last_error;

hm_status status_of(const hmom::Error& e) {
  using hmom::ErrorCode;
  switch (e.code()) {
    case ErrorCode::Domain: return HM_ERR_DOMAIN;
    case ErrorCode::NotInterior: return HM_ERR_NOT_INTERIOR;
    case ErrorCode::Convergence: return HM_ERR_CONVERGENCE;
    case ErrorCode::DimensionMismatch: return HM_ERR_DIMENSION;
    case ErrorCode::NodeCollision: return HM_ERR_NODE_COLLISION;
    case ErrorCode::BoundaryOrOutside: return HM_ERR_BOUNDARY;
    case ErrorCode::SolverBudgetExceeded: return HM_ERR_SOLVER_BUDGET;
    default: return HM_ERR_UNKNOWN;
  }
}

template <typename F>
hm_status guard(F&& f) {
  try {
    f();
    return HM_OK;
  } catch (const hmom::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HM_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return HM_ERR_UNKNOWN;
  }
}

hmom::MomentVector make_q(const double* q, int n) {
  if (!q || n < 1) throw hmom::DomainError("null or empty moment vector");
  hmom::MomentVector v;
  v.q.assign(q, q + n);
  return v;
}

hmom::JacobianKind kind_of(int kind) {
  if (kind < 0 || kind > 7) throw hmom::DomainError("invalid jacobian kind");
  return static_cast<hmom::JacobianKind>(kind);
}

hmom::IntegrationMethod method_of(int method) {
  if (method == 0) return hmom::IntegrationMethod::Quadrature;
  if (method == 1) return hmom::IntegrationMethod::MonteCarlo;
  throw hmom::DomainError("invalid integration method");
}

}  // namespace

extern "C" {

const char* hm_last_error_message(void) { return g_last_error.c_str(); }

hm_status hm_measure_create(const double* nodes, const double* weights, int count,
                            hm_measure** out) {
  return guard([&] {
    if (!nodes || !weights || !out || count < 1)
      throw hmom::DomainError("measure_create: bad arguments");
    auto* m = new hm_measure;
    m->mu.nodes.assign(nodes, nodes + count);
    m->mu.weights.assign(weights, weights + count);
    try {
      m->mu.validate();
    } catch (...) {
      delete m;
      throw;
    }
    *out = m;
  });
}

void hm_measure_destroy(hm_measure* mu) { delete mu; }

int hm_measure_size(const hm_measure* mu) {
  return mu ? static_cast<int>(mu->mu.nodes.size()) : 0;
}

hm_status hm_measure_get(const hm_measure* mu, double* nodes, double* weights) {
  return guard([&] {
    if (!mu || !nodes || !weights) throw hmom::DomainError("measure_get: null argument");
    std::memcpy(nodes, mu->mu.nodes.data(), mu->mu.nodes.size() * sizeof(double));
    std::memcpy(weights, mu->mu.weights.data(),
                mu->mu.weights.size() * sizeof(double));
  });
}

hm_status hm_moments_of(const hm_measure* mu, int n, double* q) {
  return guard([&] {
    if (!mu || !q) throw hmom::DomainError("moments_of: null argument");
    hmom::MomentVector v = hmom::moments_of(mu->mu, n);
    std::memcpy(q, v.q.data(), v.q.size() * sizeof(double));
  });
}

hm_status hm_to_canonical(const double* q, int n, double* p) {
  return guard([&] {
    if (!p) throw hmom::DomainError("to_canonical: null output");
    hmom::CanonicalMoments c = hmom::to_canonical(make_q(q, n));
    std::memcpy(p, c.p.data(), c.p.size() * sizeof(double));
  });
}

hm_status hm_from_canonical(const double* p, int n, double* q) {
  return guard([&] {
    if (!p || !q || n < 1) throw hmom::DomainError("from_canonical: bad arguments");
    hmom::CanonicalMoments c;
    c.p.assign(p, p + n);
    hmom::MomentVector v = hmom::from_canonical(c);
    std::memcpy(q, v.q.data(), v.q.size() * sizeof(double));
  });
}

hm_status hm_classify(const double* q, int n, double eta, int* out) {
  return guard([&] {
    if (!out) throw hmom::DomainError("classify: null output");
    *out = static_cast<int>(hmom::classify(make_q(q, n), eta > 0 ? eta : 1e-12));
  });
}

hm_status hm_volume(int n, double* out) {
  return guard([&] { *out = hmom::volume(n); });
}

hm_status hm_log_volume(int n, double* out) {
  return guard([&] { *out = hmom::log_volume(n); });
}

hm_status hm_sample_uniform(int n, long long count, unsigned long long seed,
                            double* q) {
  return guard([&] {
    if (!q) throw hmom::DomainError("sample_uniform: null output");
    auto draws = hmom::sample_uniform(n, count, seed);
    for (long long i = 0; i < count; ++i)
      std::memcpy(q + i * n, draws[i].q.data(), n * sizeof(double));
  });
}

hm_status hm_incomplete_beta_tail(int n, double delta, double* out) {
  return guard([&] { *out = hmom::incomplete_beta_tail(n, delta); });
}

hm_status hm_volume_mc_membership(int n, long long samples,
                                  unsigned long long seed, double* value,
                                  double* stderr_est) {
  return guard([&] {
    if (!value) throw hmom::DomainError("volume_mc_membership: null output");
    auto e = hmom::volume_mc_membership(n, samples, seed);
    *value = e.value;
    if (stderr_est) *stderr_est = e.stderr_est;
  });
}

hm_status hm_krein_index(const hm_measure* mu, double* out) {
  return guard([&] {
    if (!mu) throw hmom::DomainError("krein_index: null measure");
    *out = hmom::krein_index(mu->mu);
  });
}

hm_status hm_principal_representation(const double* q, int n, int side,
                                      hm_measure** out) {
  return guard([&] {
    if (!out) throw hmom::DomainError("principal_representation: null output");
    auto* m = new hm_measure;
    try {
      m->mu = hmom::principal_representation(
          make_q(q, n), side ? hmom::Side::Upper : hmom::Side::Lower);
    } catch (...) {
      delete m;
      throw;
    }
    *out = m;
  });
}

hm_status hm_canonical_representation(const double* q, int n, double tstar,
                                      hm_measure** out, double* star_weight,
                                      int* flavor) {
  return guard([&] {
    if (!out) throw hmom::DomainError("canonical_representation: null output");
    hmom::CanonicalRep rep = hmom::canonical_representation(make_q(q, n), tstar);
    auto* m = new hm_measure;
    m->mu = rep.measure;
    *out = m;
    if (star_weight) *star_weight = rep.star_weight;
    if (flavor) *flavor = static_cast<int>(rep.flavor);
  });
}

hm_status hm_maximal_mass(const double* q, int n, double tstar, double* out) {
  return guard([&] { *out = hmom::maximal_mass(make_q(q, n), tstar); });
}

hm_status hm_jacobian_closed_form(int kind, int m, const double* t, int t_len,
                                  double tstar, double* out) {
  return guard([&] {
    std::vector<double> tv;
    if (t_len > 0) {
      if (!t) throw hmom::DomainError("jacobian: null node array");
      tv.assign(t, t + t_len);
    }
    *out = hmom::jacobian_closed_form(kind_of(kind), m, tv, tstar);
  });
}

hm_status hm_node_dimension(int kind, int m, int* out) {
  return guard([&] { *out = hmom::node_dimension(kind_of(kind), m); });
}

hm_status hm_volume_by_cov(int kind, int m, int method, int quad_order,
                           long long mc_samples, unsigned long long seed,
                           double* value, double* stderr_est) {
  return guard([&] {
    auto r = hmom::volume_by_cov(kind_of(kind), m, method_of(method),
                                 quad_order > 0 ? quad_order : 96,
                                 mc_samples > 0 ? mc_samples : 200000, seed);
    *value = r.value;
    if (stderr_est) *stderr_est = r.stderr_est;
  });
}

hm_status hm_canonical_volume_identity(int n, double tstar, int method,
                                       int quad_order, long long mc_samples,
                                       unsigned long long seed, double* value,
                                       double* stderr_est) {
  return guard([&] {
    auto r = hmom::canonical_volume_identity(n, tstar, method_of(method),
                                             quad_order > 0 ? quad_order : 96,
                                             mc_samples > 0 ? mc_samples : 200000,
                                             seed);
    *value = r.value;
    if (stderr_est) *stderr_est = r.stderr_est;
  });
}

hm_status hm_mean_moment(int n, int i, double tstar, int quad_order, double* out) {
  return guard([&] {
    *out = hmom::mean_moment(n, i, tstar, quad_order > 0 ? quad_order : 96);
  });
}

hm_status hm_selberg_closed(int n, double alpha, double beta, double gamma,
                            double* out) {
  return guard([&] { *out = hmom::selberg_closed({n, alpha, beta, gamma}); });
}

hm_status hm_selberg_numeric(int n, double alpha, double beta, double gamma,
                             int weight, int method, int quad_order,
                             long long mc_samples, unsigned long long seed,
                             double* value, double* stderr_est) {
  return guard([&] {
    auto w = weight ? hmom::SelbergWeight::SumInverse : hmom::SelbergWeight::None;
    auto r = hmom::selberg_numeric({n, alpha, beta, gamma}, w, method_of(method),
                                   quad_order > 0 ? quad_order : 96,
                                   mc_samples > 0 ? mc_samples : 400000, seed);
    *value = r.value;
    if (stderr_est) *stderr_est = r.stderr_est;
  });
}

hm_status hm_cd_kernel(int m, double r1, double r2, double* out) {
  return guard([&] { *out = hmom::cd_kernel(m, r1, r2); });
}

hm_status hm_kernel_h_hat(int m, double tstar, double s, int quad_order,
                          double* out) {
  return guard([&] {
    *out = hmom::kernel_H_hat(m, tstar, s, quad_order > 0 ? quad_order : 64);
  });
}

hm_status hm_kernel_g_hat(int m, double tstar, double s, int quad_order,
                          double* out) {
  return guard([&] {
    *out = hmom::kernel_G_hat(m, tstar, s, quad_order > 0 ? quad_order : 64);
  });
}

hm_status hm_rkhs_check_legendre(int kmax, double* max_residual) {
  return guard([&] {
    if (!max_residual) throw hmom::DomainError("rkhs_check_legendre: null output");
    if (kmax < 2 || kmax > 20)
      throw hmom::DomainError("rkhs_check_legendre: kmax in [2,20]");
    const auto& quad = hmom::gauss_legendre(64);
    double worst = 0.0;
    auto inner = [&](auto&& a, auto&& b) {
      double s = 0.0;
      for (std::size_t i = 0; i < quad.nodes.size(); ++i)
        s += quad.weights[i] * a(quad.nodes[i]) * b(quad.nodes[i]);
      return s;
    };
    for (int j = 0; j <= kmax; ++j) {
      worst = std::max(worst, std::abs(hmom::legendre_shifted_value(j, 1.0) - 1.0));
      worst = std::max(worst, std::abs(hmom::legendre_shifted_value(j, 0.0) -
                                       (j % 2 ? -1.0 : 1.0)));
      for (int k = j; k <= kmax; ++k) {
        double expect = j == k ? 1.0 / (2.0 * j + 1.0) : 0.0;
        worst = std::max(
            worst,
            std::abs(inner([j](double r) { return hmom::legendre_shifted_value(j, r); },
                           [k](double r) { return hmom::legendre_shifted_value(k, r); }) -
                     expect));
      }
    }
    for (int j = 2; j <= kmax; ++j)
      for (int k = j; k <= kmax; ++k) {
        double expect = j == k ? hmom::q_inner_exact(j) : 0.0;
        worst = std::max(
            worst,
            std::abs(inner([j](double r) { return hmom::legendre_q_value(j, r); },
                           [k](double r) { return hmom::legendre_q_value(k, r); }) -
                     expect));
      }
    *max_residual = worst;
  });
}

hm_status hm_rkhs_check_reproduce(int m, double tstar, double* max_residual) {
  return guard([&] {
    if (!max_residual) throw hmom::DomainError("rkhs_check_reproduce: null output");
    if (m < 1) throw hmom::DomainError("rkhs_check_reproduce: m >= 1");
    if (!(tstar > 0.0 && tstar < 1.0))
      throw hmom::DomainError("rkhs_check_reproduce: tstar in (0,1)");
    double worst = 0.0;
    if (m >= 2) {
      for (int k = 2; k <= 2 * m - 1; ++k) {
        hmom::Poly qk = hmom::legendre_q(k);
        double got = hmom::reproduce_odd([&](double r) { return qk(r); }, m, tstar);
        worst = std::max(worst, std::abs(got - qk(tstar)));
      }
    }
    for (int k = 2; k <= 2 * m; ++k) {
      hmom::Poly qk = hmom::legendre_q(k);
      double got = hmom::reproduce_even([&](double r) { return qk(r); }, m, tstar);
      worst = std::max(worst, std::abs(got - qk(tstar)));
    }
    *max_residual = worst;
  });
}

hm_status hm_rkhs_check_biorth(int m, int quad_order, double* max_diag_residual,
                               double* max_offdiag) {
  return guard([&] {
    if (!max_diag_residual || !max_offdiag)
      throw hmom::DomainError("rkhs_check_biorth: null output");
    if (m < 2) throw hmom::DomainError("rkhs_check_biorth: m >= 2");
    int order = quad_order > 0 ? quad_order : 64;
    // The identity is stated for j = k (mod 2) only.
    double diag = 0.0, off = 0.0;
    for (int j = 2; j <= 2 * m - 1; ++j)
      for (int k = 2; k <= 2 * m - 1; ++k) {
        if ((j - k) % 2 != 0) continue;
        double b = hmom::biorth_integral(m, j, k, order);
        if (j == k)
          diag = std::max(diag, std::abs(b - hmom::biorth_expected(m, k)));
        else
          off = std::max(off, std::abs(b));
      }
    *max_diag_residual = diag;
    *max_offdiag = off;
  });
}

hm_status hm_rkhs_check_cd(int m, double* max_residual) {
  return guard([&] {
    if (!max_residual) throw hmom::DomainError("rkhs_check_cd: null output");
    if (m < 1) throw hmom::DomainError("rkhs_check_cd: m >= 1");
    std::vector<hmom::Poly> basis;
    for (int k = 2; k <= 2 * m - 1; ++k) basis.push_back(hmom::legendre_q(k));
    double worst = 0.0;
    for (double r1 = 0.03; r1 < 1.0; r1 += 0.07)
      for (double r2 = 0.05; r2 < 1.0; r2 += 0.09) {
        double expand = 0.0;
        for (int k = 2; k <= 2 * m - 1; ++k)
          expand += basis[k - 2](r1) * basis[k - 2](r2) / hmom::q_inner_exact(k);
        worst = std::max(worst, std::abs(hmom::cd_kernel(m, r1, r2) - expand));
      }
    *max_residual = worst;
  });
}

hm_status hm_rkhs_biorth_pair(int m, int j, int k, int quad_order, double* value,
                              double* expected) {
  return guard([&] {
    if (!value) throw hmom::DomainError("rkhs_biorth_pair: null output");
    *value = hmom::biorth_integral(m, j, k, quad_order > 0 ? quad_order : 64);
    if (expected) *expected = j == k ? hmom::biorth_expected(m, k) : 0.0;
  });
}

hm_status hm_bound_closed_form(int n, double delta, double* out) {
  return guard([&] { *out = hmom::bound_closed_form(n, delta); });
}

hm_status hm_solve_delta(int n, double delta_prime, double* out) {
  return guard([&] { *out = hmom::solve_delta(n, delta_prime); });
}

hm_status hm_brittleness_certificate(int n, double delta_prime, long long samples,
                                     unsigned long long seed, int threads,
                                     hm_brittleness_report* out) {
  return guard([&] {
    if (!out) throw hmom::DomainError("brittleness_certificate: null output");
    hmom::BrittlenessConfig cfg;
    cfg.n = n;
    cfg.delta_prime = delta_prime;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.threads = threads > 0 ? threads : 1;
    hmom::BrittlenessReport r = hmom::brittleness_certificate(cfg);
    out->delta = r.delta;
    out->bound = r.bound;
    out->estimate = r.estimate;
    out->stderr_est = r.stderr_est;
    out->prior_estimate = r.prior_estimate;
    out->prior_stderr = r.prior_stderr;
    out->rate_mass_sup = r.rates.mass_sup;
    out->rate_mass_inf = r.rates.mass_inf;
    out->rate_first_moment = r.rates.first_moment;
    out->samples = r.samples;
    out->failures = r.failures;
    out->certified = r.certified ? 1 : 0;
  });
}

}  // extern "C"
