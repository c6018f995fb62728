#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hmom/jacobians.hpp"
#include "hmom/moment_core.hpp"
#include "hmom/rng.hpp"

using namespace hmom;

namespace {

const JacobianKind kAll[] = {JacobianKind::Pol, JacobianKind::Pou, JacobianKind::Pel,
                             JacobianKind::Peu, JacobianKind::Col, JacobianKind::Cou,
                             JacobianKind::Cel, JacobianKind::Ceu};

// Random chart parameters with weights well inside the simplex and nodes
// separated from each other and from tstar.
struct Params {
  std::vector<double> lambda;
  std::vector<double> t;
};

Params random_params(JacobianKind kind, int m, double tstar, Rng& rng) {
  Params p;
  int nl = target_order(kind, m) - node_dimension(kind, m);
  p.lambda.assign(nl, 0.0);
  for (double& l : p.lambda) l = (0.2 + 0.6 * rng.uniform()) / (nl + 1);
  int nt = node_dimension(kind, m);
  for (;;) {
    p.t.assign(nt, 0.0);
    for (double& x : p.t) x = 0.05 + 0.9 * rng.uniform();
    bool ok = true;
    for (int a = 0; a < nt && ok; ++a) {
      if (std::abs(p.t[a] - tstar) < 0.03) ok = false;
      for (int b = a + 1; b < nt && ok; ++b)
        if (std::abs(p.t[a] - p.t[b]) < 0.03) ok = false;
    }
    if (ok) break;
  }
  return p;
}

}  // namespace

TEST_CASE("closed forms match the finite-difference determinant") {
  Rng rng(17);
  for (JacobianKind kind : kAll) {
    for (int m = 1; m <= 3; ++m) {
      if (node_dimension(kind, m) < 0) continue;
      double tstar = has_tstar(kind) ? 0.42 : 0.0;
      for (int rep = 0; rep < 5; ++rep) {
        Params p = random_params(kind, m, tstar, rng);
        double numeric = jacobian_numeric(kind, m, p.lambda, p.t, tstar);
        double closed = jacobian_closed_form(kind, m, p.t, tstar) *
                        weight_multiplier(kind, m, p.lambda);
        double scale = std::max(std::abs(closed), 1e-12);
        // Complex-step entries are exact; only LU conditioning remains.
        CHECK(std::abs(numeric - closed) / scale < 1e-9);
      }
    }
  }
}

TEST_CASE("simple hand values") {
  // Pol, m=1: single node chart of the order-1 body; derivative dq/dt = 1.
  CHECK(jacobian_closed_form(JacobianKind::Pol, 1, {0.3}) == doctest::Approx(1.0));
  // Pol, m=2: (t2-t1)^4.
  CHECK(jacobian_closed_form(JacobianKind::Pol, 2, {0.2, 0.7}) ==
        doctest::Approx(std::pow(0.5, 4)));
  // Cel, m=1: (t - tstar)^2.
  CHECK(jacobian_closed_form(JacobianKind::Cel, 1, {0.9}, 0.5) ==
        doctest::Approx(0.16));
  // Ceu, m=1: tstar(1-tstar), no free nodes.
  CHECK(jacobian_closed_form(JacobianKind::Ceu, 1, {}, 0.25) ==
        doctest::Approx(0.1875));
}

TEST_CASE("endpoint degenerations of the canonical kernels") {
  std::vector<double> t{0.3, 0.8};
  int m = 3;  // Col/Cou have m-1 = 2 free nodes
  CHECK(jacobian_closed_form(JacobianKind::Col, m, t, 0.0) == 0.0);
  CHECK(jacobian_closed_form(JacobianKind::Cou, m, t, 0.0) ==
        doctest::Approx(jacobian_closed_form(JacobianKind::Pou, m, t)).epsilon(1e-12));
  CHECK(jacobian_closed_form(JacobianKind::Col, m, t, 1.0) ==
        doctest::Approx(jacobian_closed_form(JacobianKind::Pou, m, t)).epsilon(1e-12));
  CHECK(jacobian_closed_form(JacobianKind::Cou, m, t, 1.0) == 0.0);

  std::vector<double> s{0.3, 0.8};
  int me = 2;  // Cel has m free nodes
  CHECK(jacobian_closed_form(JacobianKind::Cel, me, s, 0.0) ==
        doctest::Approx(jacobian_closed_form(JacobianKind::Pel, me, s)).epsilon(1e-12));
  CHECK(jacobian_closed_form(JacobianKind::Cel, me, s, 1.0) ==
        doctest::Approx(jacobian_closed_form(JacobianKind::Peu, me, s)).epsilon(1e-12));
  CHECK(jacobian_closed_form(JacobianKind::Ceu, me, {0.4}, 0.0) == 0.0);
  CHECK(jacobian_closed_form(JacobianKind::Ceu, me, {0.4}, 1.0) == 0.0);
}

TEST_CASE("reflection symmetries") {
  Rng rng(5);
  for (int m = 2; m <= 3; ++m) {
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> t(m), tr(m);
      for (int j = 0; j < m; ++j) {
        t[j] = rng.uniform();
        tr[j] = 1.0 - t[j];
      }
      // Pel(1-t) = Peu(t)
      CHECK(jacobian_closed_form(JacobianKind::Pel, m, tr) ==
            doctest::Approx(jacobian_closed_form(JacobianKind::Peu, m, t))
                .epsilon(1e-12));
      // Pou is reflection invariant
      std::vector<double> u(m - 1), ur(m - 1);
      for (int j = 0; j < m - 1; ++j) {
        u[j] = rng.uniform();
        ur[j] = 1.0 - u[j];
      }
      CHECK(jacobian_closed_form(JacobianKind::Pou, m, ur) ==
            doctest::Approx(jacobian_closed_form(JacobianKind::Pou, m, u))
                .epsilon(1e-12));
      // Cou(tstar, t) = Col(1-tstar, 1-t)
      double ts = 0.3;
      CHECK(jacobian_closed_form(JacobianKind::Cou, m, u, ts) ==
            doctest::Approx(jacobian_closed_form(JacobianKind::Col, m, ur, 1.0 - ts))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("confluent Vandermonde identity") {
  Rng rng(23);
  for (int m = 1; m <= 3; ++m) {
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<double> t(m);
      for (int j = 0; j < m; ++j) t[j] = 0.1 + 0.8 * rng.uniform();
      CHECK(karlin_shapley_residual(m, t) < 1e-5);
    }
  }
}

TEST_CASE("volume via principal charts, quadrature") {
  // n = 1..4 cover all four principal chart kinds.
  CHECK(volume_by_cov(JacobianKind::Pol, 1, IntegrationMethod::Quadrature).value ==
        doctest::Approx(volume(1)).epsilon(1e-10));
  CHECK(volume_by_cov(JacobianKind::Pou, 2, IntegrationMethod::Quadrature).value ==
        doctest::Approx(volume(3)).epsilon(1e-10));
  CHECK(volume_by_cov(JacobianKind::Pol, 2, IntegrationMethod::Quadrature).value ==
        doctest::Approx(volume(3)).epsilon(1e-10));
  CHECK(volume_by_cov(JacobianKind::Pel, 1, IntegrationMethod::Quadrature).value ==
        doctest::Approx(volume(2)).epsilon(1e-10));
  CHECK(volume_by_cov(JacobianKind::Peu, 2, IntegrationMethod::Quadrature).value ==
        doctest::Approx(volume(4)).epsilon(1e-10));
  CHECK(volume_by_cov(JacobianKind::Pel, 3, IntegrationMethod::Quadrature).value ==
        doctest::Approx(volume(6)).epsilon(1e-9));
}

TEST_CASE("volume via principal charts, Monte Carlo") {
  auto r = volume_by_cov(JacobianKind::Pol, 2, IntegrationMethod::MonteCarlo, 96,
                         200000, 11);
  CHECK(std::abs(r.value - volume(3)) < 4.0 * r.stderr_est + 1e-12);
  CHECK(r.stderr_est > 0.0);
}

TEST_CASE("canonical volume identity is tstar independent") {
  for (int n = 2; n <= 5; ++n) {
    for (double ts : {0.1, 0.35, 0.5, 0.77, 0.95}) {
      auto r = canonical_volume_identity(n, ts, IntegrationMethod::Quadrature);
      CHECK(r.value == doctest::Approx(volume(n)).epsilon(1e-9));
    }
  }
}

TEST_CASE("mean moments") {
  // i = 0 reproduces the volume; tstar independence throughout.
  for (int n = 2; n <= 5; ++n)
    for (double ts : {0.2, 0.5, 0.9})
      CHECK(mean_moment(n, 0, ts) == doctest::Approx(volume(n)).epsilon(1e-9));

  // Mean of q_1 under the flat measure is 1/2 (Beta(n,n) mean).
  for (int n = 2; n <= 5; ++n)
    CHECK(mean_moment(n, 1, 0.4) == doctest::Approx(0.5 * volume(n)).epsilon(1e-9));

  // Cross-check higher moments against direct Monte Carlo over the body.
  const int n = 4;
  auto draws = sample_uniform(n, 200000, 3);
  for (int i = 2; i <= n; ++i) {
    double mc = 0.0;
    for (const auto& q : draws) mc += q.q[i - 1];
    mc = mc / draws.size() * volume(n);
    double exact = mean_moment(n, i, 0.6);
    CHECK(std::abs(mc - exact) < 5e-3 * volume(n));
  }
}
