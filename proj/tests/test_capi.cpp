#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "hausmoment.h"

TEST_CASE("measure handles and moments") {
  double nodes[] = {0.0, 2.0 / 3.0};
  double weights[] = {0.25, 0.75};
  hm_measure* mu = nullptr;
  REQUIRE(hm_measure_create(nodes, weights, 2, &mu) == HM_OK);
  CHECK(hm_measure_size(mu) == 2);
  double n2[2], w2[2];
  CHECK(hm_measure_get(mu, n2, w2) == HM_OK);
  CHECK(n2[1] == doctest::Approx(2.0 / 3.0));
  double q[2];
  CHECK(hm_moments_of(mu, 2, q) == HM_OK);
  CHECK(q[0] == doctest::Approx(0.5));
  CHECK(q[1] == doctest::Approx(1.0 / 3.0));
  double idx = 0.0;
  CHECK(hm_krein_index(mu, &idx) == HM_OK);
  CHECK(idx == doctest::Approx(1.5));
  hm_measure_destroy(mu);

  double bad_w[] = {0.5, 0.1};
  CHECK(hm_measure_create(nodes, bad_w, 2, &mu) == HM_ERR_DOMAIN);
  CHECK(std::strlen(hm_last_error_message()) > 0);
}

TEST_CASE("canonical round trip and classification") {
  double q[] = {0.5, 1.0 / 3.0, 0.25};
  double p[3], back[3];
  REQUIRE(hm_to_canonical(q, 3, p) == HM_OK);
  REQUIRE(hm_from_canonical(p, 3, back) == HM_OK);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(q[i]).epsilon(1e-12));

  int c = -1;
  CHECK(hm_classify(q, 3, 1e-12, &c) == HM_OK);
  CHECK(c == 0);
  double outside[] = {0.5, 0.6};
  CHECK(hm_classify(outside, 2, 1e-12, &c) == HM_OK);
  CHECK(c == 2);
  CHECK(hm_to_canonical(outside, 2, p) == HM_ERR_BOUNDARY);
}

TEST_CASE("volume closed form and MC membership") {
  double v = 0.0;
  REQUIRE(hm_volume(3, &v) == HM_OK);
  CHECK(v == doctest::Approx(1.0 / 180.0).epsilon(1e-14));
  double lv = 0.0;
  CHECK(hm_log_volume(3, &lv) == HM_OK);
  CHECK(std::exp(lv) == doctest::Approx(v));
  double est = 0.0, se = 0.0;
  REQUIRE(hm_volume_mc_membership(2, 200000, 7, &est, &se) == HM_OK);
  CHECK(std::abs(est - 1.0 / 6.0) < 3.5 * se);
}

TEST_CASE("representations through the C interface") {
  double q[] = {0.5, 1.0 / 3.0};
  hm_measure* mu = nullptr;
  REQUIRE(hm_principal_representation(q, 2, 0, &mu) == HM_OK);
  double n2[2], w2[2];
  REQUIRE(hm_measure_get(mu, n2, w2) == HM_OK);
  CHECK(n2[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(n2[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(w2[0] == doctest::Approx(0.25).epsilon(1e-10));
  hm_measure_destroy(mu);

  double sw = 0.0;
  int flavor = -1;
  REQUIRE(hm_canonical_representation(q, 2, 0.5, &mu, &sw, &flavor) == HM_OK);
  CHECK(sw == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  hm_measure_destroy(mu);

  double mass = 0.0;
  CHECK(hm_maximal_mass(q, 2, 0.5, &mass) == HM_OK);
  CHECK(mass == doctest::Approx(2.0 / 3.0).epsilon(1e-9));

  double outside[] = {0.5, 0.6};
  CHECK(hm_principal_representation(outside, 2, 0, &mu) == HM_ERR_NOT_INTERIOR);
}

TEST_CASE("uniform sampling and beta tail") {
  std::vector<double> buf(1000 * 2);
  REQUIRE(hm_sample_uniform(2, 1000, 3, buf.data()) == HM_OK);
  double mean = 0.0;
  for (int i = 0; i < 1000; ++i) mean += buf[2 * i];
  mean /= 1000;
  CHECK(std::abs(mean - 0.5) < 0.03);
  double tail = 0.0;
  CHECK(hm_incomplete_beta_tail(2, 0.5, &tail) == HM_OK);
  CHECK(tail == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("jacobians and volumes") {
  double t[] = {0.3, 0.8};
  double j = 0.0;
  REQUIRE(hm_jacobian_closed_form(0, 2, t, 2, 0.0, &j) == HM_OK);
  double d = 0.8 - 0.3;
  CHECK(j == doctest::Approx(d * d * d * d).epsilon(1e-12));
  int dim = 0;
  CHECK(hm_node_dimension(0, 2, &dim) == HM_OK);
  CHECK(dim == 2);

  double value = 0.0, se = 0.0, closed = 0.0;
  REQUIRE(hm_volume_by_cov(0, 2, 0, 64, 0, 1, &value, &se) == HM_OK);
  REQUIRE(hm_volume(3, &closed) == HM_OK);
  CHECK(value == doctest::Approx(closed).epsilon(1e-9));

  REQUIRE(hm_canonical_volume_identity(3, 0.4, 0, 64, 0, 1, &value, &se) == HM_OK);
  CHECK(value == doctest::Approx(closed).epsilon(1e-9));

  double mm = 0.0;
  REQUIRE(hm_mean_moment(3, 1, 0.5, 96, &mm) == HM_OK);
  CHECK(mm == doctest::Approx(0.5 * closed).epsilon(1e-8));
}

TEST_CASE("selberg") {
  double v = 0.0;
  REQUIRE(hm_selberg_closed(2, 1.0, 1.0, 2.0, &v) == HM_OK);
  CHECK(v == doctest::Approx(1.0 / 15.0).epsilon(1e-14));
  double num = 0.0, se = 0.0;
  REQUIRE(hm_selberg_numeric(2, 1.0, 1.0, 2.0, 0, 0, 48, 0, 1, &num, &se) == HM_OK);
  CHECK(num == doctest::Approx(v).epsilon(1e-12));
  CHECK(hm_selberg_closed(2, -1.0, 1.0, 2.0, &v) == HM_ERR_DOMAIN);
}

TEST_CASE("rkhs checks") {
  double resid = 0.0;
  REQUIRE(hm_rkhs_check_legendre(8, &resid) == HM_OK);
  CHECK(resid < 1e-10);
  REQUIRE(hm_rkhs_check_cd(2, &resid) == HM_OK);
  CHECK(resid < 1e-10);
  REQUIRE(hm_rkhs_check_reproduce(2, 0.37, &resid) == HM_OK);
  CHECK(resid < 1e-8);
  double diag = 0.0, off = 0.0;
  REQUIRE(hm_rkhs_check_biorth(2, 64, &diag, &off) == HM_OK);
  CHECK(diag < 1e-8);
  CHECK(off < 1e-8);
  double value = 0.0, expected = 0.0;
  REQUIRE(hm_rkhs_biorth_pair(2, 2, 2, 64, &value, &expected) == HM_OK);
  CHECK(expected == doctest::Approx(1.0 / 25.0).epsilon(1e-12));
  CHECK(value == doctest::Approx(expected).epsilon(1e-8));

  double k1 = 0.0, k2 = 0.0;
  REQUIRE(hm_cd_kernel(2, 0.3, 0.7, &k1) == HM_OK);
  REQUIRE(hm_cd_kernel(2, 0.7, 0.3, &k2) == HM_OK);
  CHECK(k1 == doctest::Approx(k2).epsilon(1e-12));
  REQUIRE(hm_kernel_h_hat(2, 0.4, 0.6, 64, &k1) == HM_OK);
  CHECK(std::isfinite(k1));
  REQUIRE(hm_kernel_g_hat(1, 0.4, 0.6, 64, &k1) == HM_OK);
  CHECK(std::isfinite(k1));
}

TEST_CASE("brittleness") {
  double b = 0.0;
  REQUIRE(hm_bound_closed_form(1, 1e-6, &b) == HM_OK);
  CHECK(b == doctest::Approx(0.9018).epsilon(2e-4));
  double d = 0.0;
  REQUIRE(hm_solve_delta(2, 0.1, &d) == HM_OK);
  REQUIRE(hm_bound_closed_form(2, d, &b) == HM_OK);
  CHECK(b == doctest::Approx(0.8).epsilon(1e-12));

  hm_brittleness_report r;
  REQUIRE(hm_brittleness_certificate(1, 0.1, 20000, 5, 2, &r) == HM_OK);
  CHECK(r.bound == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(r.certified == 1);
  CHECK(std::abs(r.prior_estimate - 0.5) < 3.0 * r.prior_stderr);
  CHECK(r.failures == 0);
}
