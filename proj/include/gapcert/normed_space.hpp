#pragma once

#include "gapcert/core.hpp"

namespace gapcert {

enum class Field { Real, Complex };

/// Norm descriptor for a (possibly weighted) l^p norm on coordinates:
///   p < inf :  ||x|| = (sum_i w_i |x_i|^p)^(1/p)
///   p = inf :  ||x|| = max_i w_i |x_i|
/// Empty weights mean all ones.
struct NormDesc {
  double p = 2.0;
  RealVec weights;  // empty or strictly positive, size dim

  bool weighted() const { return weights.size() > 0; }
};

/// A finite-dimensional normed space over R or C with an l^p-type norm.
class NormedSpace {
public:
  NormedSpace() = default;
  NormedSpace(int dim, Field field, NormDesc norm = NormDesc{});

  static NormedSpace l2(int dim, Field field = Field::Real) {
    return NormedSpace(dim, field, NormDesc{2.0, {}});
  }
  static NormedSpace lp(int dim, double p, Field field = Field::Real) {
    return NormedSpace(dim, field, NormDesc{p, {}});
  }

  int dim() const { return dim_; }
  Field field() const { return field_; }
  const NormDesc& norm_desc() const { return norm_; }
  double weight(int i) const { return norm_.weighted() ? norm_.weights[i] : 1.0; }

  double norm(const Vec& x) const;

  /// Dual norm of a coordinate functional f acting by f(x) = sum_i conj(f_i) x_i.
  double dual_norm(const Vec& f) const;

  /// The dual space: same coordinates, conjugate exponent, transformed weights.
  NormedSpace dual() const;

  /// Constants r_lo <= ||x|| / ||x||_2 <= r_hi valid for all x != 0.
  std::pair<double, double> euclidean_equivalence() const;

  bool is_l2() const { return norm_.p == 2.0; }
  bool is_euclidean() const { return is_l2() && !norm_.weighted(); }

  /// For p == 2: diagonal D with ||x|| = ||D x||_2 (D = W^{1/2}).
  RealVec l2_scaling() const;

  bool operator==(const NormedSpace& o) const;
  bool operator!=(const NormedSpace& o) const { return !(*this == o); }

private:
  int dim_ = 0;
  Field field_ = Field::Real;
  NormDesc norm_;
};

/// Spot check of the norm axioms on random triples (used by tests and
/// instance validation): returns false if any axiom fails at tolerance.
bool spot_check_norm_axioms(const NormedSpace& X, uint64_t seed, int trials);

}  // namespace gapcert
