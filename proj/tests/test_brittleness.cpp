#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hmom/brittleness.hpp"

using namespace hmom;

TEST_CASE("bound and radius are mutually consistent") {
  // By construction bound(n, solve_delta(n, dp)) = 1 - 2 dp.
  for (int n = 1; n <= 5; ++n)
    for (double dp : {0.05, 0.1, 0.2, 0.35, 0.49})
      CHECK(bound_closed_form(n, solve_delta(n, dp)) ==
            doctest::Approx(1.0 - 2.0 * dp).epsilon(1e-12));
  // Large delta drives the bound to zero.
  CHECK(bound_closed_form(2, 0.4) == 0.0);
  CHECK_THROWS_AS((void)solve_delta(2, 0.7), DomainError);
}

TEST_CASE("mass-sup event rate matches (1-eps)^n") {
  for (int n : {1, 2, 3}) {
    double eps = 0.15;
    auto r = event_rate_mass_sup(n, eps, 0.6, 20000, 77);
    double expect = std::pow(1.0 - eps, n);
    CHECK(std::abs(r.estimate - expect) < 4.0 * r.stderr_est + 1e-9);
    CHECK(r.failures == 0);
  }
}

TEST_CASE("mass-inf event rate obeys the lower bound") {
  int n = 2;
  double delta = 1e-3;
  auto r = event_rate_mass_inf(n, delta, 0.85, 20000, 13);
  CHECK(r.estimate >= 1.0 - delta * std::pow(2.0 * 2.718281828459045, 2.0 * n) -
                          4.0 * r.stderr_est);
  CHECK(r.failures == 0);
}

TEST_CASE("first-moment event rate matches the exact beta tail") {
  for (int n : {1, 2, 3}) {
    double dp = 0.3;
    auto r = event_rate_first_moment(n, dp, 40000, 5);
    double expect = incomplete_beta_tail(n, dp);
    CHECK(std::abs(r.estimate - expect) < 4.0 * r.stderr_est + 1e-9);
    // ... and the tail sits inside its analytic envelope.
    CHECK(expect >= std::pow(dp, n) * (1.0 - 1e-12));
    CHECK(expect <= std::pow(dp, n) * std::pow(2.0 * 2.718281828459045, n));
  }
}

TEST_CASE("certificate runs, certifies, and is deterministic") {
  BrittlenessConfig cfg;
  cfg.n = 2;
  cfg.delta_prime = 0.3;
  cfg.samples = 20000;
  cfg.seed = 2024;
  BrittlenessReport a = brittleness_certificate(cfg);
  CHECK(a.failures <= cfg.samples / 1000);
  CHECK(a.bound == doctest::Approx(1.0 - 2.0 * cfg.delta_prime).epsilon(1e-12));
  CHECK(a.estimate > 0.0);
  CHECK(a.certified);
  // Event rates behave like their analytic references.
  CHECK(std::abs(a.rates.first_moment - incomplete_beta_tail(2, 0.3)) < 0.02);
  CHECK(a.rates.mass_inf > 0.99);
  double eps = std::pow(0.3, 2) / 4.0;
  CHECK(std::abs(a.rates.mass_sup - std::pow(1.0 - eps, 2)) < 0.02);

  BrittlenessReport b = brittleness_certificate(cfg);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_est == b.stderr_est);

  cfg.threads = 4;
  BrittlenessReport c = brittleness_certificate(cfg);
  CHECK(a.estimate == c.estimate);
  CHECK(a.rates.mass_sup == c.rates.mass_sup);
}

TEST_CASE("certificate across orders") {
  for (int n : {1, 3}) {
    BrittlenessConfig cfg;
    cfg.n = n;
    cfg.delta_prime = 0.35;
    cfg.samples = 8000;
    cfg.seed = 9 + n;
    cfg.threads = 2;
    BrittlenessReport r = brittleness_certificate(cfg);
    CHECK(r.failures <= cfg.samples / 1000);
    CHECK(r.estimate - 3.0 * r.stderr_est > 0.0);
  }
}
