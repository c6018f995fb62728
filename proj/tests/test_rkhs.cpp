#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hmom/jacobians.hpp"
#include "hmom/rkhs.hpp"
#include "hmom/special.hpp"

using namespace hmom;

namespace {

double integrate1(const std::function<double(double)>& f, int order = 96) {
  QuadratureRule r = gauss_legendre(order);
  double s = 0.0;
  for (int i = 0; i < order; ++i) s += r.weights[i] * f(r.nodes[i]);
  return s;
}

}  // namespace

TEST_CASE("shifted Legendre basics") {
  Poly p2 = legendre_shifted(2);
  REQUIRE(p2.c.size() == 3);
  CHECK(p2.c[0] == doctest::Approx(1.0));
  CHECK(p2.c[1] == doctest::Approx(-6.0));
  CHECK(p2.c[2] == doctest::Approx(6.0));
  for (int k = 0; k <= 8; ++k) {
    CHECK(legendre_shifted(k)(1.0) == doctest::Approx(1.0).epsilon(1e-10));
    for (int j = 0; j <= k; ++j) {
      double ip = integrate1([&](double r) {
        return legendre_shifted(j)(r) * legendre_shifted(k)(r);
      });
      double expect = j == k ? 1.0 / (2.0 * k + 1.0) : 0.0;
      CHECK(ip == doctest::Approx(expect).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS((void)legendre_shifted(21), DomainError);
}

TEST_CASE("Q family orthogonality and moments") {
  for (int k = 2; k <= 7; ++k) {
    Poly qk = legendre_q(k);
    CHECK(qk(0.0) == doctest::Approx(0.0));
    CHECK(qk(1.0) == doctest::Approx(0.0));
    for (int j = 2; j <= k; ++j) {
      Poly qj = legendre_q(j);
      double ip = integrate1([&](double r) { return qj(r) * qk(r); });
      double expect = j == k ? q_inner_exact(k) : 0.0;
      CHECK(std::abs(ip - expect) < 1e-9 * std::max(1.0, q_inner_exact(k)));
    }
    for (int j = 0; j <= k + 3; ++j) {
      double num = integrate1([&](double r) { return std::pow(r, j) * qk(r); });
      CHECK(num == doctest::Approx(q_moment_integral(j, k)).epsilon(1e-9));
    }
  }
  // spot value: a_22 = 2/5 so int r^2 Q_2 = 3/5
  CHECK(q_moment_integral(2, 2) == doctest::Approx(0.6));
}

TEST_CASE("H kernel endpoint vanishing and reflection") {
  for (int m : {2, 3}) {
    std::vector<double> t(m - 1);
    for (int i = 0; i < m - 1; ++i) t[i] = 0.15 + 0.6 * i;
    CHECK(kernel_H(m, 0.0, t) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(kernel_H(m, 1.0, t) == doctest::Approx(0.0).epsilon(1e-14));
    std::vector<double> tr(t);
    for (double& x : tr) x = 1.0 - x;
    CHECK(kernel_H(m, 0.3, t) ==
          doctest::Approx(kernel_H(m, 0.7, tr)).epsilon(1e-12));
  }
}

TEST_CASE("odd reproduction") {
  // phi in the span of Q_2..Q_{2m-1} (vanishes at both endpoints).
  auto phi1 = [](double s) { return s - s * s; };
  auto phi2 = [](double s) { return s * s - s * s * s; };
  for (int m : {2, 3}) {
    for (double ts : {0.2, 0.5, 0.81}) {
      CHECK(reproduce_odd(phi1, m, ts) == doctest::Approx(phi1(ts)).epsilon(1e-9));
      CHECK(reproduce_odd(phi2, m, ts) == doctest::Approx(phi2(ts)).epsilon(1e-9));
    }
  }
  // m = 3 admits degree 5.
  auto phi5 = [](double s) { return (s - s * s) * (0.3 + s - 2 * s * s * s); };
  for (double ts : {0.33, 0.66})
    CHECK(reproduce_odd(phi5, 3, ts) == doctest::Approx(phi5(ts)).epsilon(1e-9));
  CHECK_THROWS_AS((void)reproduce_odd([](double s) { return s; }, 2, 0.5), DomainError);
}

TEST_CASE("even reproduction") {
  auto phi1 = [](double s) { return s - s * s; };
  auto phi2 = [](double s) { return (s - s * s) * (1.0 - 2.0 * s); };
  for (double ts : {0.25, 0.5, 0.75}) {
    CHECK(reproduce_even(phi1, 1, ts) == doctest::Approx(phi1(ts)).epsilon(1e-9));
    CHECK(reproduce_even(phi1, 2, ts) == doctest::Approx(phi1(ts)).epsilon(1e-9));
    CHECK(reproduce_even(phi2, 2, ts) == doctest::Approx(phi2(ts)).epsilon(1e-9));
  }
  // m = 2 admits degree 4.
  auto phi4 = [](double s) { return (s - s * s) * (s - s * s); };
  CHECK(reproduce_even(phi4, 2, 0.4) == doctest::Approx(phi4(0.4)).epsilon(1e-9));
}

TEST_CASE("Christoffel-Darboux form is the orthonormal Q expansion") {
  for (int m : {1, 2, 3}) {
    for (double r1 : {0.1, 0.37, 0.62, 0.9}) {
      for (double r2 : {0.2, 0.45, 0.7}) {
        double sum = 0.0;
        for (int k = 2; k <= 2 * m - 1; ++k)
          sum += legendre_q(k)(r1) * legendre_q(k)(r2) / q_inner_exact(k);
        CHECK(std::abs(cd_kernel(m, r1, r2) - sum) < 1e-11);
      }
    }
  }
}

TEST_CASE("chart kernel and CD kernel agree as functionals on the target span") {
  // Hbar-hat differs from the CD kernel only by components orthogonal to
  // span{Q_2..Q_{2m-1}}, so both integrate identically against it.
  auto phi = [](double s) { return (s - s * s) * (0.7 - s); };
  for (int m : {2, 3}) {
    for (double ts : {0.25, 0.6}) {
      double via_chart = reproduce_odd(phi, m, ts);
      double via_cd = integrate1([&](double s) { return phi(s) * cd_kernel(m, ts, s); });
      CHECK(via_chart == doctest::Approx(via_cd).epsilon(1e-9));
      CHECK(via_cd == doctest::Approx(phi(ts)).epsilon(1e-9));
    }
  }
}

TEST_CASE("confluent limit of the CD kernel is continuous") {
  for (int m : {1, 2, 3}) {
    double at = cd_kernel(m, 0.4, 0.4);
    CHECK(cd_kernel(m, 0.4, 0.4 + 2e-7) == doctest::Approx(at).epsilon(1e-5));
    CHECK(cd_kernel(m, 0.4 - 3e-7, 0.4) == doctest::Approx(at).epsilon(1e-5));
  }
}

TEST_CASE("biorthogonality, m = 2 hand values") {
  CHECK(biorth_integral(2, 2, 2) == doctest::Approx(1.0 / 25.0).epsilon(1e-11));
  CHECK(biorth_integral(2, 3, 3) == doctest::Approx(1.0 / 7.0).epsilon(1e-11));
  CHECK(biorth_expected(2, 2) == doctest::Approx(1.0 / 25.0).epsilon(1e-12));
  CHECK(biorth_expected(2, 3) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("biorthogonality, general") {
  for (int m : {2, 3}) {
    for (int j = 2; j <= 2 * m - 1; ++j) {
      for (int k = 2; k <= 2 * m - 1; ++k) {
        double got = biorth_integral(m, j, k);
        if ((j - k) % 2 != 0) continue;  // identity asserted per parity class
        double expect = j == k ? biorth_expected(m, k) : 0.0;
        CHECK(std::abs(got - expect) < 1e-10 * std::max(1.0, biorth_expected(m, k)));
      }
    }
  }
}
