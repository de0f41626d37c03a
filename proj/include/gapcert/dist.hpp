#pragma once

#include "gapcert/subspace.hpp"

namespace gapcert {

/// Certified enclosure of inf_{v in N} ||u - v|| together with the
/// artifacts backing both sides: a near-optimal point of N for the upper
/// bound and an annihilator functional certifying the lower bound.
struct DistResult {
  Interval dist;
  Vec nearest;      // v in N with ||u - v|| = dist.hi
  Vec certificate;  // f in the annihilator with |f(u)| / ||f||_* = dist.lo (empty if unused)
};

/// Point-to-subspace distance in N's ambient norm.  Exact for p = 2
/// (orthogonal projection after the weight transform), linear programming
/// for real l1 / linf, convex descent with a dual certificate otherwise.
DistResult dist_to_subspace_detail(const Vec& u, const Subspace& N);

Interval dist_to_subspace(const Vec& u, const Subspace& N);

/// Euclidean distance ||(I - P_N) u||_2, ignoring the space's norm.
double dist_euclidean(const Vec& u, const Subspace& N);

/// Norming functional of r: f with f(r) = ||r|| and ||f||_* = 1 under the
/// pairing f(x) = sum conj(f_i) x_i.  Zero vector maps to zero.
Vec norming_functional(const NormedSpace& X, const Vec& r);

}  // namespace gapcert
