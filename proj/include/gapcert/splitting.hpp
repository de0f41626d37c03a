#pragma once

#include "gapcert/tetrad.hpp"

namespace gapcert {

/// Chain of unit vectors progressively far from M, with the product
/// constants certifying a minimum-gap lower bound for their span against M.
struct BallDistanceCertificate {
  std::vector<Vec> u;
  RealVec deltas;      // certified dist(u_k, M + V_{k-1}) >= deltas[k]
  RealVec Delta;       // Delta_k = prod_{i>=k} deltas_i / prod_{i>k} (1 + deltas_i)
  double gamma_bound;  // Delta_1 / n
  Subspace V;          // span of the chain
  Verdict checks;
};

BallDistanceCertificate ball_distance_certificate(const Subspace& M,
                                                  const std::vector<Vec>& u,
                                                  const RealVec& deltas,
                                                  int budget = 2000,
                                                  uint64_t seed = 0);

/// Moves a finite-dimensional V inside N to a same-dimension V' inside N',
/// certified close to V.  Gated on delta(N, N') < 1 / (2^{n-1} n).
struct TransportResult {
  Subspace Vp;
  double bound;  // certified delta-hat(V, V') upper bound
  Verdict checks;
};

TransportResult transport_subspace(const Subspace& V, const Subspace& N,
                                   const Subspace& Np, int budget = 2000,
                                   uint64_t seed = 0);

/// Greedy splitting construction: M = L + S (direct), directions of M far
/// from N are extracted into V_k, the remainder U pairs with a nearby
/// W inside N + V_k.  All displayed constants and inequalities are
/// evaluated with certified enclosures in `checks`.
struct SplittingResult {
  Subspace V_k, U_nk, W_nk;
  int k = 0;
  std::map<std::string, double> constants;
  Verdict checks;
};

SplittingResult split(const Subspace& L, const Subspace& S, const Subspace& N,
                      double a, int budget = 2000, uint64_t seed = 0);

}  // namespace gapcert
