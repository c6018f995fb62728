#pragma once

#include <cstdint>

#include "hmom/moment_core.hpp"

namespace hmom {

/// Posterior-deviation lower bound as a function of the data-fit radius:
/// max(0, 1 - 4e (2 n delta / e)^(1/(2n+1))).
double bound_closed_form(int n, double delta);

/// Radius giving a target bound 1 - 2*delta_prime:
/// delta = (1/(4n)) delta_prime^(2n+1) (2e)^(-2n).
double solve_delta(int n, double delta_prime);

struct ExperimentReport {
  double estimate = 0.0;
  double stderr_est = 0.0;
  long long samples = 0;
  long long failures = 0;
};

/// P(maximal mass at tstar >= eps) under the uniform prior on the order-n
/// body; equals (1-eps)^n for every interior tstar.
ExperimentReport event_rate_mass_sup(int n, double eps, double tstar,
                                     long long samples, std::uint64_t seed);

/// P(no node of the lower principal representation falls within delta of
/// tstar); bounded below by 1 - delta (2e)^(2n).
ExperimentReport event_rate_mass_inf(int n, double delta, double tstar,
                                     long long samples, std::uint64_t seed);

/// P(q_1 > 1 - delta_prime) = I_{delta_prime}(n, n).
ExperimentReport event_rate_first_moment(int n, double delta_prime,
                                         long long samples, std::uint64_t seed);

struct BrittlenessConfig {
  int n = 2;
  double delta_prime = 0.3;
  long long samples = 20000;
  std::uint64_t seed = 1;
  int threads = 1;
  double solver_failure_budget = 1e-3;  // fraction of draws allowed to fail
};

struct EventRates {
  double mass_sup = 0.0;
  double mass_inf = 0.0;
  double first_moment = 0.0;
};

struct BrittlenessReport {
  double delta = 0.0;       // solve_delta(n, delta_prime)
  double bound = 0.0;       // bound_closed_form(n, delta) = 1 - 2 delta_prime
  double estimate = 0.0;    // Monte-Carlo mean of the certificate statistic
  double stderr_est = 0.0;
  double prior_estimate = 0.0;  // Monte-Carlo mean of q_1 (sanity: 1/2)
  double prior_stderr = 0.0;
  EventRates rates;
  long long samples = 0;
  long long failures = 0;
  bool certified = false;   // estimate - 3*stderr > 0
};

/// Monte-Carlo certificate for the brittleness lower bound. Draws moment
/// vectors uniformly, evaluates the statistic
///   theta(q) = (q_1 - lambda) * maximal_mass(q, d)        if q_1 > lambda
///            = (q_1 - lambda) * 1[rep nodes meet B_delta(d)] otherwise
/// with lambda = 1 - 2 delta_prime, d = 1 - delta_prime/2, and certifies a
/// strictly positive mean at three standard errors. Deterministic given the
/// seed, independent of the thread count. Throws SolverBudgetExceeded when
/// more than the budgeted fraction of draws fail to solve.
BrittlenessReport brittleness_certificate(const BrittlenessConfig& cfg);

}  // namespace hmom
