#include "hmom/representations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hmom/linalg.hpp"

namespace hmom {

namespace {

constexpr double kResidualTol = 1e-10;
constexpr double kCollisionTol = 1e-9;

// Support of the measure whose canonical coordinates are (prefix..., terminal)
// with terminal in {0,1}. The continuation after the terminal entry is
// irrelevant: the recurrence truncates at an exactly zero beta.
DiscreteMeasure measure_from_terminated(std::vector<double> prefix, double terminal) {
  prefix.push_back(terminal);
  prefix.push_back(0.0);  // forces the next chain coefficient to vanish
  const int size = static_cast<int>(prefix.size()) / 2 + 2;
  std::vector<double> alpha, beta;
  detail::jacobi_from_canonical(prefix, size, alpha, beta);
  int block = size;
  for (int k = 0; k < static_cast<int>(beta.size()); ++k) {
    if (beta[k] == 0.0) {
      block = k + 1;
      break;
    }
  }
  std::vector<double> diag(alpha.begin(), alpha.begin() + block);
  std::vector<double> off(block - 1);
  for (int k = 0; k < block - 1; ++k) off[k] = std::sqrt(beta[k]);
  TridiagEigen eig = tridiag_eigen(diag, off);
  DiscreteMeasure mu;
  mu.nodes.resize(block);
  mu.weights.resize(block);
  for (int i = 0; i < block; ++i) {
    mu.nodes[i] = std::min(1.0, std::max(0.0, eig.values[i]));
    mu.weights[i] = eig.first_components[i] * eig.first_components[i];
  }
  return mu;
}

void snap_endpoints(DiscreteMeasure& mu, double tol = 1e-8) {
  for (double& t : mu.nodes) {
    if (t < tol) t = 0.0;
    if (t > 1.0 - tol) t = 1.0;
  }
}

void sort_measure(DiscreteMeasure& mu) {
  std::vector<int> idx(mu.nodes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return mu.nodes[a] < mu.nodes[b]; });
  DiscreteMeasure out;
  for (int i : idx) {
    out.nodes.push_back(mu.nodes[i]);
    out.weights.push_back(mu.weights[i]);
  }
  mu = out;
}

// Newton refinement of (weights, free nodes) against the moment conditions
// sum w_j = 1, sum w_j t_j^i = q_i. Pinned nodes keep their positions.
void newton_polish(DiscreteMeasure& mu, const std::vector<bool>& node_free,
                   const std::vector<double>& q) {
  const int n = static_cast<int>(q.size());
  const int N = static_cast<int>(mu.nodes.size());
  int nfree = 0;
  for (bool f : node_free) nfree += f ? 1 : 0;
  const int dim = N + nfree;
  if (dim != n + 1)
    throw ConvergenceFailure("representation: unexpected support structure");

  auto residual = [&](const DiscreteMeasure& m, std::vector<double>& F) {
    F.assign(n + 1, 0.0);
    for (int j = 0; j < N; ++j) F[0] += m.weights[j];
    F[0] -= 1.0;
    for (int i = 1; i <= n; ++i) {
      double s = 0.0;
      for (int j = 0; j < N; ++j) s += m.weights[j] * std::pow(m.nodes[j], i);
      F[i] = s - q[i - 1];
    }
  };

  std::vector<double> F, Fnew, step;
  residual(mu, F);
  for (int iter = 0; iter < 60; ++iter) {
    double sup = 0.0;
    for (double f : F) sup = std::max(sup, std::abs(f));
    if (sup <= 1e-13) break;

    // Jacobian: columns are weights then free nodes.
    std::vector<double> J(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int j = 0; j < N; ++j) {
      J[0 * dim + j] = 1.0;
      for (int i = 1; i <= n; ++i) J[i * dim + j] = std::pow(mu.nodes[j], i);
    }
    int col = N;
    for (int j = 0; j < N; ++j) {
      if (!node_free[j]) continue;
      for (int i = 1; i <= n; ++i)
        J[i * dim + col] = i * mu.weights[j] * std::pow(mu.nodes[j], i - 1);
      ++col;
    }
    std::vector<double> rhs(F.begin(), F.end());
    for (double& v : rhs) v = -v;
    if (!solve_linear(J, rhs, dim, step)) break;

    double damp = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 25; ++bt) {
      DiscreteMeasure trial = mu;
      for (int j = 0; j < N; ++j) trial.weights[j] += damp * step[j];
      int c = N;
      for (int j = 0; j < N; ++j) {
        if (!node_free[j]) continue;
        trial.nodes[j] =
            std::min(1.0 - 1e-14, std::max(1e-14, mu.nodes[j] + damp * step[c]));
        ++c;
      }
      residual(trial, Fnew);
      double supNew = 0.0;
      for (double f : Fnew) supNew = std::max(supNew, std::abs(f));
      if (supNew < sup) {
        mu = trial;
        F = Fnew;
        accepted = true;
        break;
      }
      damp *= 0.5;
    }
    if (!accepted) break;
  }
  double sup = 0.0;
  for (double f : F) sup = std::max(sup, std::abs(f));
  if (sup > kResidualTol)
    throw ConvergenceFailure("representation: moment residual above tolerance");
}

std::vector<bool> free_mask(const DiscreteMeasure& mu, double tstar, bool has_star) {
  std::vector<bool> mask(mu.nodes.size());
  for (std::size_t j = 0; j < mu.nodes.size(); ++j) {
    double t = mu.nodes[j];
    bool pinned = t == 0.0 || t == 1.0 || (has_star && t == tstar);
    mask[j] = !pinned;
  }
  return mask;
}

// Terminated canonical decode of a boundary moment point: walk the canonical
// recursion and cut at the first coordinate within tol of {0,1}.
DiscreteMeasure decode_boundary(const std::vector<double>& q, double tol) {
  const int n = static_cast<int>(q.size());
  std::vector<double> prefix;
  for (int k = 1; k <= n; ++k) {
    prefix.push_back(0.0);
    double q_minus = detail::moments_from_canonical_prefix(prefix, k)[k - 1];
    prefix.back() = 1.0;
    double q_plus = detail::moments_from_canonical_prefix(prefix, k)[k - 1];
    prefix.pop_back();
    double denom = q_plus - q_minus;
    if (denom <= 1e-14) return measure_from_terminated(prefix, 0.0);
    double pk = (q[k - 1] - q_minus) / denom;
    pk = std::min(1.0, std::max(0.0, pk));
    if (pk <= tol) return measure_from_terminated(prefix, 0.0);
    if (pk >= 1.0 - tol) return measure_from_terminated(prefix, 1.0);
    prefix.push_back(pk);
  }
  // Numerically interior: terminate low; the Newton polish absorbs the slack.
  prefix.pop_back();
  return measure_from_terminated(prefix, 0.0);
}

}  // namespace

DiscreteMeasure principal_representation(const MomentVector& q, Side side) {
  if (classify(q) != Classification::Interior)
    throw NotInteriorError("principal_representation: moment point not interior");
  CanonicalMoments p = to_canonical(q);
  DiscreteMeasure mu =
      measure_from_terminated(p.p, side == Side::Lower ? 0.0 : 1.0);
  snap_endpoints(mu);
  sort_measure(mu);
  newton_polish(mu, free_mask(mu, 0.0, false), q.q);
  return mu;
}

double maximal_mass(const MomentVector& q, double tstar) {
  if (!(tstar >= 0.0 && tstar <= 1.0))
    throw DomainError("maximal_mass: tstar outside [0,1]");
  if (classify(q) != Classification::Interior)
    throw NotInteriorError("maximal_mass: moment point not interior");
  const int n = q.order();
  if (tstar == 0.0 || tstar == 1.0) {
    // Endpoint mass is read off the principal representation containing it.
    Side side;
    if (n % 2 == 1) side = Side::Upper;
    else side = tstar == 0.0 ? Side::Lower : Side::Upper;
    DiscreteMeasure mu = principal_representation(q, side);
    for (std::size_t j = 0; j < mu.nodes.size(); ++j)
      if (mu.nodes[j] == tstar) return mu.weights[j];
    return 0.0;
  }

  auto member = [&](double w) {
    double r[detail::kMaxOrder];
    double tp = 1.0;
    for (int i = 0; i < n; ++i) {
      tp *= tstar;
      r[i] = (q.q[i] - w * tp) / (1.0 - w);
    }
    return detail::classify_buf(r, n, 1e-12, nullptr) != Classification::Outside;
  };

  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (member(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

CanonicalRep canonical_representation(const MomentVector& q, double tstar) {
  if (!(tstar >= 0.0 && tstar <= 1.0))
    throw DomainError("canonical_representation: tstar outside [0,1]");
  if (classify(q) != Classification::Interior)
    throw NotInteriorError("canonical_representation: moment point not interior");
  const int n = q.order();

  if (tstar == 0.0 || tstar == 1.0) {
    Side side;
    if (n % 2 == 1) side = Side::Upper;
    else side = tstar == 0.0 ? Side::Lower : Side::Upper;
    CanonicalRep rep;
    rep.measure = principal_representation(q, side);
    rep.tstar = tstar;
    rep.flavor =
        side == Side::Lower ? RepFlavor::PrincipalLower : RepFlavor::PrincipalUpper;
    for (std::size_t j = 0; j < rep.measure.nodes.size(); ++j)
      if (rep.measure.nodes[j] == tstar) rep.star_weight = rep.measure.weights[j];
    return rep;
  }

  double w = maximal_mass(q, tstar);

  // Residual moment point after removing the atom; it sits on the boundary.
  MomentVector r;
  r.q.resize(n);
  double tp = 1.0;
  for (int i = 0; i < n; ++i) {
    tp *= tstar;
    r.q[i] = (q.q[i] - w * tp) / (1.0 - w);
  }
  DiscreteMeasure rest = decode_boundary(r.q, 1e-6);
  snap_endpoints(rest);

  DiscreteMeasure mu;
  for (std::size_t j = 0; j < rest.nodes.size(); ++j) {
    if (std::abs(rest.nodes[j] - tstar) < kCollisionTol)
      throw NodeCollision("canonical_representation: tstar collides with a node");
    mu.nodes.push_back(rest.nodes[j]);
    mu.weights.push_back((1.0 - w) * rest.weights[j]);
  }
  mu.nodes.push_back(tstar);
  mu.weights.push_back(w);
  sort_measure(mu);

  newton_polish(mu, free_mask(mu, tstar, true), q.q);

  CanonicalRep rep;
  rep.measure = mu;
  rep.tstar = tstar;
  bool has0 = false, has1 = false;
  for (std::size_t j = 0; j < mu.nodes.size(); ++j) {
    if (mu.nodes[j] == 0.0) has0 = true;
    if (mu.nodes[j] == 1.0) has1 = true;
    if (mu.nodes[j] == tstar) rep.star_weight = mu.weights[j];
  }
  if (n % 2 == 1) {
    if (has0 == has1)
      throw ConvergenceFailure("canonical_representation: ambiguous flavor");
    rep.flavor = has0 ? RepFlavor::CanonicalLower : RepFlavor::CanonicalUpper;
  } else {
    if (has0 != has1)
      throw ConvergenceFailure("canonical_representation: ambiguous flavor");
    rep.flavor = has0 ? RepFlavor::CanonicalUpper : RepFlavor::CanonicalLower;
  }
  return rep;
}

}  // namespace hmom
