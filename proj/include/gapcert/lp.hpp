#pragma once

#include "gapcert/core.hpp"

namespace gapcert {

/// Result of min c'x s.t. Ax = b, x >= 0.
struct LpResult {
  bool optimal = false;
  bool infeasible = false;
  double value = 0.0;
  RealVec x;
  RealVec dual;  // multipliers y with A'y <= c at optimality
  int iterations = 0;
};

/// Dense two-phase revised simplex with Bland's rule.  Intended for the
/// small epigraph reformulations of l1 / linf distances (tens of variables).
LpResult solve_lp(const RealMat& A, const RealVec& b, const RealVec& c,
                  int max_iter = 20000);

}  // namespace gapcert
