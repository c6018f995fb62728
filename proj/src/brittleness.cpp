#include "hmom/brittleness.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "hmom/representations.hpp"
#include "hmom/rng.hpp"
#include "hmom/special.hpp"

namespace hmom {

namespace {

constexpr double kE = 2.718281828459045235360287;

MomentVector draw_moment(int n, std::uint64_t seed, std::uint64_t index) {
  Rng rng = Rng::stream(seed, index);
  CanonicalMoments p;
  p.p.resize(n);
  for (int k = 1; k <= n; ++k) {
    double a = static_cast<double>(n - k + 1);
    p.p[k - 1] = rng.beta(a, a);
  }
  return from_canonical(p);
}

// Deterministic parallel map over draw indices: results land in
// per-index slots, so the reduction order never depends on thread count.
template <typename F>
void parallel_draws(long long samples, int threads, F&& f) {
  threads = std::max(1, threads);
  if (threads == 1) {
    for (long long i = 0; i < samples; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  long long chunk = (samples + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    long long lo = t * chunk, hi = std::min(samples, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&f, lo, hi] {
      for (long long i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

ExperimentReport rate_report(const std::vector<signed char>& flag, long long failures) {
  ExperimentReport r;
  r.samples = static_cast<long long>(flag.size());
  r.failures = failures;
  long long hits = 0, valid = 0;
  for (signed char f : flag) {
    if (f < 0) continue;
    ++valid;
    hits += f;
  }
  double p = valid > 0 ? static_cast<double>(hits) / valid : 0.0;
  r.estimate = p;
  r.stderr_est = valid > 0 ? std::sqrt(std::max(0.0, p * (1.0 - p)) / valid) : 0.0;
  return r;
}

}  // namespace

double bound_closed_form(int n, double delta) {
  if (n < 1) throw DomainError("bound_closed_form: order must be positive");
  if (!(delta > 0.0)) throw DomainError("bound_closed_form: delta must be positive");
  double v = 1.0 - 4.0 * kE * std::pow(2.0 * n * delta / kE, 1.0 / (2.0 * n + 1.0));
  return std::max(0.0, v);
}

double solve_delta(int n, double delta_prime) {
  if (n < 1) throw DomainError("solve_delta: order must be positive");
  if (!(delta_prime > 0.0 && delta_prime < 0.5))
    throw DomainError("solve_delta: delta_prime must lie in (0, 1/2)");
  return std::pow(delta_prime, 2.0 * n + 1.0) * std::pow(2.0 * kE, -2.0 * n) /
         (4.0 * n);
}

ExperimentReport event_rate_mass_sup(int n, double eps, double tstar,
                                     long long samples, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("event_rate_mass_sup: eps in (0,1)");
  std::vector<signed char> flag(samples, -1);
  long long failures = 0;
  for (long long i = 0; i < samples; ++i) {
    MomentVector q = draw_moment(n, seed, i);
    try {
      flag[i] = maximal_mass(q, tstar) >= eps ? 1 : 0;
    } catch (const Error&) {
      ++failures;
    }
  }
  return rate_report(flag, failures);
}

ExperimentReport event_rate_mass_inf(int n, double delta, double tstar,
                                     long long samples, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("event_rate_mass_inf: delta in (0,1)");
  std::vector<signed char> flag(samples, -1);
  long long failures = 0;
  for (long long i = 0; i < samples; ++i) {
    MomentVector q = draw_moment(n, seed, i);
    try {
      DiscreteMeasure mu = principal_representation(q, Side::Lower);
      bool clear = true;
      for (double t : mu.nodes)
        if (std::abs(t - tstar) <= delta) clear = false;
      flag[i] = clear ? 1 : 0;
    } catch (const Error&) {
      ++failures;
    }
  }
  return rate_report(flag, failures);
}

ExperimentReport event_rate_first_moment(int n, double delta_prime,
                                         long long samples, std::uint64_t seed) {
  if (!(delta_prime > 0.0 && delta_prime < 1.0))
    throw DomainError("event_rate_first_moment: delta_prime in (0,1)");
  std::vector<signed char> flag(samples, -1);
  for (long long i = 0; i < samples; ++i) {
    MomentVector q = draw_moment(n, seed, i);
    flag[i] = q.q[0] > 1.0 - delta_prime ? 1 : 0;
  }
  return rate_report(flag, 0);
}

BrittlenessReport brittleness_certificate(const BrittlenessConfig& cfg) {
  if (cfg.n < 1) throw DomainError("brittleness_certificate: order must be positive");
  if (cfg.samples < 1) throw DomainError("brittleness_certificate: samples >= 1");
  const int n = cfg.n;
  const double dp = cfg.delta_prime;
  const double delta = solve_delta(n, dp);
  const double lambda = 1.0 - 2.0 * dp;
  const double d = 1.0 - dp / 2.0;
  const double eps = std::pow(dp, n) / (2.0 * n);

  struct Slot {
    double theta = 0.0;
    double q1 = 0.0;
    signed char sup = -1, inf = -1, fm = -1;
    bool failed = false;
  };
  std::vector<Slot> slots(cfg.samples);

  parallel_draws(cfg.samples, cfg.threads, [&](long long i) {
    Slot& s = slots[i];
    MomentVector q = draw_moment(n, cfg.seed, static_cast<std::uint64_t>(i));
    s.q1 = q.q[0];
    s.fm = q.q[0] > 1.0 - dp ? 1 : 0;
    try {
      double mass = maximal_mass(q, d);
      s.sup = mass >= eps ? 1 : 0;
      DiscreteMeasure mu = principal_representation(q, Side::Lower);
      bool clear = true;
      for (double t : mu.nodes)
        if (std::abs(t - d) <= delta) clear = false;
      s.inf = clear ? 1 : 0;
      if (q.q[0] > lambda) {
        s.theta = (q.q[0] - lambda) * mass;
      } else {
        s.theta = clear ? 0.0 : (q.q[0] - lambda);
      }
    } catch (const Error&) {
      s.failed = true;
    }
  });

  BrittlenessReport rep;
  rep.delta = delta;
  rep.bound = bound_closed_form(n, delta);
  rep.samples = cfg.samples;

  KahanSum sum, sumsq, psum, psumsq;
  long long valid = 0;
  long long sup_hits = 0, sup_valid = 0, inf_hits = 0, inf_valid = 0;
  long long fm_hits = 0;
  for (const Slot& s : slots) {
    if (s.failed) {
      ++rep.failures;
      continue;
    }
    ++valid;
    sum.add(s.theta);
    sumsq.add(s.theta * s.theta);
    psum.add(s.q1);
    psumsq.add(s.q1 * s.q1);
    if (s.sup >= 0) {
      ++sup_valid;
      sup_hits += s.sup;
    }
    if (s.inf >= 0) {
      ++inf_valid;
      inf_hits += s.inf;
    }
    fm_hits += s.fm;
  }
  if (static_cast<double>(rep.failures) >
      cfg.solver_failure_budget * static_cast<double>(cfg.samples))
    throw SolverBudgetExceeded("brittleness_certificate: too many solver failures");
  if (valid == 0) throw ConvergenceFailure("brittleness_certificate: no valid draws");

  double mean = sum.value() / valid;
  double var = std::max(0.0, sumsq.value() / valid - mean * mean);
  rep.estimate = mean;
  rep.stderr_est = std::sqrt(var / valid);
  double pmean = psum.value() / valid;
  double pvar = std::max(0.0, psumsq.value() / valid - pmean * pmean);
  rep.prior_estimate = pmean;
  rep.prior_stderr = std::sqrt(pvar / valid);
  rep.rates.mass_sup = sup_valid ? static_cast<double>(sup_hits) / sup_valid : 0.0;
  rep.rates.mass_inf = inf_valid ? static_cast<double>(inf_hits) / inf_valid : 0.0;
  rep.rates.first_moment = static_cast<double>(fm_hits) / valid;
  rep.certified = rep.estimate - 3.0 * rep.stderr_est > 0.0;
  return rep;
}

}  // namespace hmom
