#include "hmom/moment_core.hpp"

#include <algorithm>
#include <cmath>

#include "hmom/rng.hpp"
#include "hmom/special.hpp"

namespace hmom {

void DiscreteMeasure::validate() const {
  if (nodes.size() != weights.size())
    throw DimensionMismatch("measure: nodes/weights size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] >= 0.0 && nodes[i] <= 1.0))
      throw DomainError("measure: node outside [0,1]");
    if (weights[i] < -1e-15) throw DomainError("measure: negative weight");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw DomainError("measure: weights do not sum to 1");
}

MomentVector moments_of(const DiscreteMeasure& mu, int n) {
  mu.validate();
  if (n < 1) throw DomainError("moments_of: order must be positive");
  MomentVector out;
  out.q.resize(n);
  std::vector<double> power(mu.nodes.size(), 1.0);
  for (int i = 0; i < n; ++i) {
    KahanSum s;
    for (std::size_t j = 0; j < mu.nodes.size(); ++j) {
      power[j] *= mu.nodes[j];
      s.add(mu.weights[j] * power[j]);
    }
    out.q[i] = s.value();
  }
  return out;
}

namespace detail {

void jacobi_from_canonical(const std::vector<double>& p, int size,
                           std::vector<double>& alpha, std::vector<double>& beta) {
  // zeta_k, k = 1..2*size-1, from the chain-sequence factorization.
  const int nz = 2 * size - 1;
  std::vector<double> zeta(nz + 1, 0.0);
  double prev_p = 0.0;  // p_0 := 0 so that zeta_1 = p_1
  for (int k = 1; k <= nz; ++k) {
    double pk = k <= static_cast<int>(p.size()) ? p[k - 1] : 0.5;
    zeta[k] = (1.0 - prev_p) * pk;
    prev_p = pk;
  }
  alpha.assign(size, 0.0);
  beta.assign(std::max(0, size - 1), 0.0);
  alpha[0] = zeta[1];
  for (int k = 1; k < size; ++k) {
    alpha[k] = zeta[2 * k] + zeta[2 * k + 1];
    beta[k - 1] = zeta[2 * k - 1] * zeta[2 * k];
  }
}

void moments_from_prefix_buf(const double* p, int plen, int n, double* q_out) {
  if (n > kMaxOrder) throw DomainError("moment order exceeds supported maximum");
  const int size = n / 2 + 1;  // J of this size fixes moments through 2*size-1 >= n
  const int nz = 2 * size - 1;
  double alpha[kMaxOrder / 2 + 2], offdiag[kMaxOrder / 2 + 2];
  {
    double prev_p = 0.0, prev_zeta = 0.0;
    double zeta1 = 0.0;
    for (int k = 1; k <= nz; ++k) {
      double pk = k <= plen ? p[k - 1] : 0.5;
      double zk = (1.0 - prev_p) * pk;
      prev_p = pk;
      if (k == 1) {
        zeta1 = zk;
        alpha[0] = zk;
      } else if (k % 2 == 0) {
        int idx = k / 2;  // zeta_{2 idx}
        offdiag[idx - 1] = std::sqrt(prev_zeta * zk);
        alpha[idx] = zk;  // partially: zeta_{2k}; completed on the odd step
      } else {
        alpha[k / 2] += zk;  // add zeta_{2k+1}
      }
      prev_zeta = zk;
    }
    (void)zeta1;
  }
  double v[kMaxOrder / 2 + 2], w[kMaxOrder / 2 + 2];
  for (int r = 0; r < size; ++r) v[r] = 0.0;
  v[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < size; ++r) {
      double s = alpha[r] * v[r];
      if (r > 0) s += offdiag[r - 1] * v[r - 1];
      if (r + 1 < size) s += offdiag[r] * v[r + 1];
      w[r] = s;
    }
    for (int r = 0; r < size; ++r) v[r] = w[r];
    q_out[i] = v[0];
  }
}

std::vector<double> moments_from_canonical_prefix(const std::vector<double>& p,
                                                  int n) {
  std::vector<double> q(n);
  moments_from_prefix_buf(p.data(), static_cast<int>(p.size()), n, q.data());
  return q;
}

Classification classify_buf(const double* q, int n, double eta, double* p_out) {
  if (n < 1) throw DomainError("moment vector must have positive order");
  if (n > kMaxOrder) throw DomainError("moment order exceeds supported maximum");
  for (int i = 0; i < n; ++i)
    if (!std::isfinite(q[i])) return Classification::Outside;
  double prefix[kMaxOrder + 1];
  double tmp[kMaxOrder];
  const double tail_tol = std::max(eta, 1e-12);
  for (int k = 1; k <= n; ++k) {
    prefix[k - 1] = 0.0;
    moments_from_prefix_buf(prefix, k, k, tmp);
    double q_minus = tmp[k - 1];
    prefix[k - 1] = 1.0;
    moments_from_prefix_buf(prefix, k, k, tmp);
    double q_plus = tmp[k - 1];
    double denom = q_plus - q_minus;
    if (denom <= 1e-14) {
      // Prefix already pins the whole sequence: point is on a face. The
      // remaining moments are determined; any mismatch puts q outside.
      moments_from_prefix_buf(prefix, k - 1, n, tmp);
      for (int i = k - 1; i < n; ++i)
        if (std::abs(q[i] - tmp[i]) > tail_tol) return Classification::Outside;
      return Classification::Boundary;
    }
    double pk = (q[k - 1] - q_minus) / denom;
    if (pk < -eta || pk > 1.0 + eta) return Classification::Outside;
    if (pk <= eta || pk >= 1.0 - eta) {
      // Everything after the hit is determined; check the tail and stop.
      prefix[k - 1] = pk <= eta ? 0.0 : 1.0;
      moments_from_prefix_buf(prefix, k, n, tmp);
      for (int i = k; i < n; ++i)
        if (std::abs(q[i] - tmp[i]) > tail_tol) return Classification::Outside;
      return Classification::Boundary;
    }
    prefix[k - 1] = pk;
  }
  if (p_out)
    for (int i = 0; i < n; ++i) p_out[i] = prefix[i];
  return Classification::Interior;
}

}  // namespace detail

CanonicalMoments to_canonical(const MomentVector& q) {
  CanonicalMoments out;
  out.p.resize(q.order());
  Classification c =
      detail::classify_buf(q.q.data(), q.order(), 1e-15, out.p.data());
  if (c != Classification::Interior)
    throw BoundaryOrOutside("to_canonical: point is not interior");
  return out;
}

MomentVector from_canonical(const CanonicalMoments& pm) {
  const int n = pm.order();
  if (n < 1) throw DomainError("from_canonical: order must be positive");
  for (double p : pm.p)
    if (!(p >= 0.0 && p <= 1.0))
      throw DomainError("from_canonical: coordinate outside [0,1]");
  MomentVector out;
  out.q = detail::moments_from_canonical_prefix(pm.p, n);
  return out;
}

Classification classify(const MomentVector& q, double eta) {
  return detail::classify_buf(q.q.data(), q.order(), eta, nullptr);
}

double log_volume(int n) {
  if (n < 1) throw DomainError("volume: order must be positive");
  double lv = 0.0;
  for (int k = 1; k <= n; ++k)
    lv += 2.0 * log_gamma(static_cast<double>(k)) - log_gamma(2.0 * k);
  return lv;
}

double volume(int n) { return std::exp(log_volume(n)); }

double dirichlet_integral(const std::vector<double>& exponents) {
  if (exponents.empty()) throw DomainError("dirichlet_integral: empty exponents");
  double num = 0.0, total = 0.0;
  for (double a : exponents) {
    if (!(a > 0.0)) throw DomainError("dirichlet_integral: exponents must be positive");
    num += log_gamma(a);
    total += a;
  }
  return std::exp(num - log_gamma(total));
}

std::vector<MomentVector> sample_uniform(int n, std::int64_t count,
                                         std::uint64_t seed) {
  if (n < 1) throw DomainError("sample_uniform: order must be positive");
  if (count < 0) throw DomainError("sample_uniform: negative count");
  std::vector<MomentVector> out;
  out.reserve(static_cast<std::size_t>(count));
  CanonicalMoments p;
  p.p.resize(n);
  for (std::int64_t i = 0; i < count; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    for (int k = 1; k <= n; ++k) {
      double a = static_cast<double>(n - k + 1);
      p.p[k - 1] = rng.beta(a, a);
    }
    out.push_back(from_canonical(p));
  }
  return out;
}

McEstimate volume_mc_membership(int n, std::int64_t samples, std::uint64_t seed) {
  if (n < 1) throw DomainError("volume_mc_membership: order must be positive");
  if (samples < 1) throw DomainError("volume_mc_membership: samples >= 1 required");
  double q[detail::kMaxOrder];
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    for (int d = 0; d < n; ++d) q[d] = rng.uniform();
    if (detail::classify_buf(q, n, 1e-12, nullptr) != Classification::Outside)
      ++hits;
  }
  McEstimate e;
  double p = static_cast<double>(hits) / samples;
  e.value = p;
  e.stderr_est = std::sqrt(std::max(0.0, p * (1.0 - p)) / samples);
  return e;
}

double incomplete_beta_tail(int n, double delta) {
  if (n < 1) throw DomainError("incomplete_beta_tail: order must be positive");
  if (!(delta >= 0.0 && delta <= 0.5))
    throw DomainError("incomplete_beta_tail: delta must lie in [0, 1/2]");
  return beta_cdf_nn(n, delta);
}

double krein_index(const DiscreteMeasure& mu) {
  mu.validate();
  double idx = 0.0;
  for (double t : mu.nodes) idx += (t <= 0.0 || t >= 1.0) ? 0.5 : 1.0;
  return idx;
}

}  // namespace hmom
