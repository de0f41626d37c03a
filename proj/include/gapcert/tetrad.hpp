#pragma once

#include "gapcert/gap.hpp"

namespace gapcert {

/// Nested configuration Y1 inside M cap N, M + N inside Y2, with its
/// integer invariants.  In finite dimensions every tetrad is Fredholm.
struct Tetrad {
  Subspace Y1, M, N, Y2;
  int cap_excess = 0;   // dim (M cap N) / Y1
  int sum_deficit = 0;  // dim Y2 / (M + N)
  int index = 0;

  Tetrad(Subspace y1, Subspace m, Subspace n, Subspace y2);
  /// Pair (M, N) seen as the tetrad with Y1 = {0}, Y2 = X.
  static Tetrad of_pair(Subspace m, Subspace n);
};

struct PairIndex {
  int dim_cap = 0;
  int codim_sum = 0;
  int index = 0;
};

PairIndex pair_index(const Subspace& M, const Subspace& N);

int tetrad_index(const Tetrad& t);

/// Checks index(M', N) = index(M, N) + dim M'/M for M inside M'.
Verdict finite_diff_index_check(const Subspace& M, const Subspace& Mp,
                                const Subspace& N);

enum class TetradVariant {
  V11a,        // sum-side gate; codimension of the sum does not grow
  V11b,        // cap-side gate; excess over Y1 does not grow
  V12a,        // index does not drop
  V12b,        // index does not rise
  V12c,        // index equality
  V12d,        // V12a gate and index(t) >= m  =>  index(tp) >= m
  V12e,        // V12b gate and index(t) <= m  =>  index(tp) <= m
  FiniteExtA,  // nested pair: quotient dimension does not grow
  FiniteExtB,  // nested pair: quotient dimension does not drop
};

TetradVariant parse_tetrad_variant(const std::string& name, int* m_out);
std::string to_string(TetradVariant v);

Verdict verify_tetrad_stability(const Tetrad& t, const Tetrad& tp, TetradVariant variant,
                                int m = 0, int budget = 2000, uint64_t seed = 0);

/// Disjunctive witness search: a unit u in M with dist(u, N) > a, or a unit
/// v in N with dist(v, L) > b.  Requires L properly inside M and
/// (a+1)(b+1) < 2.  `found = false` means the search budget ran out, never
/// a disproof.
struct TwoPointWitness {
  bool found = false;
  bool in_M = false;  // true: u in M beats a; false: v in N beats b
  Vec vector;
  double certified_dist = 0.0;
};

TwoPointWitness two_point_witness(const Subspace& M, const Subspace& N,
                                  const Subspace& L, double a, double b,
                                  int budget = 2000, uint64_t seed = 0);

}  // namespace gapcert
