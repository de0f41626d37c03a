#pragma once

#include "gapcert/gap.hpp"
#include "gapcert/perturb.hpp"

namespace gapcert {

/// Finite-rank stand-in for a compact perturbation K with the data the
/// stability certificates need about I + K.
struct PerturbationOperator {
  Mat K;
  Interval norm_K;
  bool invertible_IplusK = false;
  std::optional<Interval> cond_a;  // ||I+K|| ||(I+K)^-1|| when invertible

  static PerturbationOperator make(const NormedSpace& X, Mat K, int budget = 500,
                                   uint64_t seed = 0);
  Mat iplusk() const { return Mat::Identity(K.rows(), K.cols()) + K; }
};

struct RelDimReport {
  int value = 0;  // index of I+K : M -> N
  int kernel_dim = 0;
  int cokernel_dim = 0;
  PerturbationOperator K_used;
};

/// Relative dimension of (M, N) along K; requires (I+K)M inside N.
/// In finite dimensions the value always equals dim M - dim N, which the
/// report cross-checks.
RelDimReport relative_dim(const Subspace& M, const Subspace& N,
                          const PerturbationOperator& K);

/// Additivity along a chain: (I+K) alpha inside beta, (I+L) beta inside
/// gamma; the relative dimension telescopes through the composite.
Verdict additivity_check(const Subspace& alpha, const Subspace& beta,
                         const Subspace& gamma, const PerturbationOperator& K,
                         const PerturbationOperator& L);

/// Writes gamma as the graph {a + A a : a in alpha} of a map A : alpha ->
/// beta, given X = alpha (+) beta with gamma a complement of beta too.
struct GraphOperator {
  Mat A;  // ambient operator: a |-> A a on alpha, zero on its orthocomplement
  bool F_iso = false;
  Verdict checks;
};

GraphOperator graph_operator(const Subspace& alpha, const Subspace& beta,
                             const Subspace& gamma);

/// Splits off ker(I+K) and returns an invertible I + K1 agreeing with I + K
/// on the complement M1, so (I+K1) M1 = N1 inside N.
struct NormalizedPerturbation {
  Subspace M1, N1;
  PerturbationOperator K1;
  int dropped_dim = 0;  // dim M / M1
};

NormalizedPerturbation normalize_perturbation(const Subspace& M, const Subspace& N,
                                              const PerturbationOperator& K);

enum class RelDimVariant { V14c, V14d, V14e };

/// Stability of the relative dimension under perturbations of the pair.
/// U and V may be empty; they are then synthesized as the complements of
/// (I+K1)M cap N inside N and inside (I+K1)M respectively.
Verdict verify_reldim_stability(const Subspace& M, const Subspace& N,
                                const Subspace& Mp, const Subspace& Np,
                                const PerturbationOperator& K1, const Subspace& U,
                                const Subspace& V, RelDimVariant variant,
                                int budget = 2000, uint64_t seed = 0);

/// Any finite-dimensional pair is comparable: the canonical K with
/// (I+K)M inside N (acts as P_N after killing M's part sticking out).
PerturbationOperator canonical_perturbation(const Subspace& M, const Subspace& N,
                                            int budget = 500, uint64_t seed = 0);

}  // namespace gapcert
