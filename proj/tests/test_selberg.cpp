#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hmom/moment_core.hpp"
#include "hmom/selberg.hpp"
#include "hmom/special.hpp"

using namespace hmom;

TEST_CASE("closed form, elementary cases") {
  // n = 1 reduces to the beta function.
  CHECK(selberg_closed({1, 2.0, 2.0, 0.7}) ==
        doctest::Approx(beta_function(2.0, 2.0)).epsilon(1e-13));
  CHECK(selberg_closed({1, 3.0, 1.0, 2.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  // n = 2, a = b = 1, g = 1: int |t-s| dt ds = 1/3.
  CHECK(selberg_closed({2, 1.0, 1.0, 0.5}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // S_0 = empty product.
  CHECK(selberg_closed({0, 1.0, 1.0, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("closed form vs quadrature, polynomial exponents") {
  for (int n = 1; n <= 3; ++n) {
    for (double g : {1.0, 2.0}) {
      SelbergParams p{n, 2.0, 3.0, g};
      double exact = selberg_closed(p);
      double num = selberg_numeric(p).value;
      CHECK(num == doctest::Approx(exact).epsilon(1e-11));
    }
  }
}

TEST_CASE("closed form vs Monte Carlo, non-integer gamma") {
  SelbergParams p{2, 1.5, 2.5, 0.5};
  auto r = selberg_numeric(p, SelbergWeight::None, IntegrationMethod::MonteCarlo, 0,
                           400000, 19);
  CHECK(std::abs(r.value - selberg_closed(p)) < 5.0 * r.stderr_est + 1e-12);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS((void)selberg_closed({2, -1.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS((void)selberg_closed({2, 1.0, 1.0, -0.6}), DomainError);
  CHECK_THROWS_AS((void)selberg_closed({3, 0.5, 1.0, -0.3}), DomainError);
  CHECK_NOTHROW((void)selberg_closed({2, 1.0, 1.0, -0.4}));
}

TEST_CASE("weighted power-sum identities") {
  // m = 1 values are 1/12 and 1/2 by direct integration.
  double lhs1 = selberg_numeric({1, 3.0, 3.0, 2.0}, SelbergWeight::SumInverse).value;
  CHECK(lhs1 == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  double lhs2 = selberg_numeric({1, 3.0, 1.0, 2.0}, SelbergWeight::SumInverse).value;
  CHECK(lhs2 == doctest::Approx(0.5).epsilon(1e-12));

  for (int m = 1; m <= 3; ++m) {
    CHECK(weighted_identity_residual_sym(m) < 1e-10);
    CHECK(weighted_identity_residual_low(m) < 1e-10);
  }
}

TEST_CASE("volume consistency identities") {
  for (int m = 1; m <= 6; ++m) {
    CHECK(volume_consistency_residual_odd(m) < 1e-12);
    CHECK(volume_consistency_residual_even(m) < 1e-12);
    // And the odd one really is the volume of the order 2m-1 body.
    double vol = selberg_closed({m, 1.0, 1.0, 2.0}) /
                 (std::exp(log_gamma(2.0 * m)) * std::exp(log_gamma(m + 1.0)));
    CHECK(vol == doctest::Approx(volume(2 * m - 1)).epsilon(1e-11));
  }
}
