#pragma once

#include "gapcert/dist.hpp"

namespace gapcert {

/// Certified report of the directed gaps, minimum gaps, and (optionally) the
/// unit-sphere Hausdorff distance between two subspaces of one space.
struct GapReport {
  Interval delta_MN;
  Interval delta_NM;
  Interval delta_hat;
  Interval gamma_MN;
  Interval gamma_NM;
  Interval gamma_hat;
  std::optional<Interval> hausdorff;
  std::optional<Vec> delta_MN_maximizer;  // unit vector of M near the sup
  std::optional<Vec> delta_NM_maximizer;
  int samples_used = 0;
  uint64_t seed = 0;
};

/// Euclidean gap: largest singular value of (I - P_N) Q_M (Q_M orthonormal).
/// Conventions: 0 if M = {0}; 1 if M != {0}, N = {0}.
double gap_l2_exact(const Subspace& M, const Subspace& N);

/// Euclidean minimum gap: smallest singular value of (I - P_N) Q_{M1} where
/// M1 is the orthogonal complement of M cap N inside M; 1 when M is
/// contained in N.
double gamma_l2_exact(const Subspace& M, const Subspace& N);

/// Directed gap delta(M, N) = sup over the unit sphere of M of dist(., N)
/// in the space's norm, as a certified enclosure.  Exact for p = 2;
/// otherwise sampled lower bounds and norm-equivalence upper bounds.
Interval gap_delta(const Subspace& M, const Subspace& N, int budget = 2000,
                   uint64_t seed = 0);

/// Minimum gap gamma(M, N) = inf over u in M minus N of
/// dist(u, N) / dist(u, M cap N); 1 when M is contained in N.
Interval gap_gamma(const Subspace& M, const Subspace& N, int budget = 2000,
                   uint64_t seed = 0);

GapReport gap_report(const Subspace& M, const Subspace& N, int budget = 2000,
                     uint64_t seed = 0, bool with_hausdorff = false);

/// Symmetric gap max(delta(M,N), delta(N,M)) without the full report.
Interval gap_delta_hat(const Subspace& M, const Subspace& N, int budget = 2000,
                       uint64_t seed = 0);

}  // namespace gapcert
