#pragma once

#include <cstdint>
#include <vector>

#include "hmom/errors.hpp"

namespace hmom {

/// Truncated moment vector (q_1, ..., q_n) of a probability measure on [0,1].
struct MomentVector {
  std::vector<double> q;
  int order() const { return static_cast<int>(q.size()); }
};

/// Canonical-coordinate vector (p_1, ..., p_n); every interior moment point
/// corresponds to a unique p in (0,1)^n.
struct CanonicalMoments {
  std::vector<double> p;
  int order() const { return static_cast<int>(p.size()); }
};

/// Finitely supported probability measure on [0,1].
struct DiscreteMeasure {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Throws DomainError unless nodes are in [0,1], weights nonnegative and
  /// summing to 1 within 1e-12, and sizes agree.
  void validate() const;
};

enum class Classification { Interior, Boundary, Outside };

/// First n power moments of a discrete measure.
MomentVector moments_of(const DiscreteMeasure& mu, int n);

/// Moment -> canonical coordinates. Throws BoundaryOrOutside when the point
/// is not strictly interior (p would leave (0,1)).
CanonicalMoments to_canonical(const MomentVector& q);

/// Canonical coordinates -> moments. Valid for p in [0,1]^n.
MomentVector from_canonical(const CanonicalMoments& p);

/// Classify a moment point relative to the moment body, with boundary
/// tolerance eta in canonical coordinates.
Classification classify(const MomentVector& q, double eta = 1e-12);

/// Euclidean volume of the order-n moment body: prod_k Gamma(k)^2/Gamma(2k).
double volume(int n);
double log_volume(int n);

/// Dirichlet integral over the simplex: prod Gamma(a_i) / Gamma(sum a_i).
double dirichlet_integral(const std::vector<double>& exponents);

/// Draw `count` moment vectors uniformly from the order-n body.
/// Deterministic given (n, seed); independent of threading.
std::vector<MomentVector> sample_uniform(int n, std::int64_t count,
                                         std::uint64_t seed);

struct McEstimate {
  double value = 0.0;
  double stderr_est = 0.0;
};

/// Monte-Carlo membership estimate of volume(n): fraction of uniform draws
/// from the unit cube that land inside the moment body.
McEstimate volume_mc_membership(int n, std::int64_t samples, std::uint64_t seed);

/// P(q_1 <= delta) under the uniform distribution on the order-n body,
/// i.e. the Beta(n,n) CDF at delta. Requires 0 <= delta <= 1/2.
double incomplete_beta_tail(int n, double delta);

/// Index of a discrete measure: interior support points count 1,
/// endpoint support points count 1/2.
double krein_index(const DiscreteMeasure& mu);

namespace detail {

/// Recurrence coefficients (Jacobi matrix) from canonical coordinates:
/// zeta_1 = p_1, zeta_k = (1-p_{k-1}) p_k,
/// alpha_0 = zeta_1, alpha_k = zeta_{2k} + zeta_{2k+1},
/// beta_k = zeta_{2k-1} zeta_{2k}.
/// `size` is the requested matrix dimension; p is padded with 1/2 if short.
void jacobi_from_canonical(const std::vector<double>& p, int size,
                           std::vector<double>& alpha, std::vector<double>& beta);

/// Moments q_1..q_n of the measure with canonical prefix p (padded with 1/2
/// beyond the given entries; padding does not affect q_1..q_len(p) and keeps
/// the rest well defined). Computed as (J^i)_{00} with J tridiagonal.
std::vector<double> moments_from_canonical_prefix(const std::vector<double>& p,
                                                  int n);

/// Maximum moment order supported by the stack-buffer fast paths.
constexpr int kMaxOrder = 32;

/// Allocation-free core of moments_from_canonical_prefix; q_out needs n slots.
void moments_from_prefix_buf(const double* p, int plen, int n, double* q_out);

/// Allocation-free classification (shared by classify and the maximal-mass
/// bisection). Writes canonical coordinates to p_out when non-null and the
/// point is interior.
Classification classify_buf(const double* q, int n, double eta, double* p_out);

}  // namespace detail

}  // namespace hmom
