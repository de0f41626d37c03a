#pragma once

#include "gapcert/subspace.hpp"

#include <functional>

namespace gapcert {

/// Deterministic Kronecker (irrational-rotation) sequence in [0,1)^dim,
/// with a Box-Muller view producing standard normals.  Platform-stable:
/// no library distribution objects are involved.
class LowDiscrepancy {
public:
  LowDiscrepancy(int dim, uint64_t seed);
  RealVec next();
  RealVec next_gaussian(int m);

private:
  RealVec alpha_;
  RealVec state_;
};

/// `count` deterministic unit vectors (in M's space norm) spanning directions
/// of M.  Empty when M = {0}.
std::vector<Vec> sphere_samples(const Subspace& M, int count, uint64_t seed);

/// Local hill-climb maximization of `score` over the unit sphere of M,
/// starting from a unit vector of M.  Returns the best vector found.
Vec refine_on_sphere(const Subspace& M, const Vec& start,
                     const std::function<double(const Vec&)>& score, int steps,
                     uint64_t seed);

}  // namespace gapcert
