#pragma once

#include "gapcert/normed_space.hpp"

namespace gapcert {

/// A linear subspace of a NormedSpace, given by a spanning basis.  The basis
/// must have full numerical column rank at `rank_tol` (relative to the
/// largest singular value).  All integer dimension decisions in the library
/// funnel through this one tolerance.
class Subspace {
public:
  Subspace() = default;
  Subspace(NormedSpace space, Mat basis, double rank_tol = kDefaultRankTol);

  static Subspace zero(NormedSpace space, double rank_tol = kDefaultRankTol);
  static Subspace full(NormedSpace space, double rank_tol = kDefaultRankTol);
  /// Span of coordinate axes.
  static Subspace coordinate(NormedSpace space, std::vector<int> axes,
                             double rank_tol = kDefaultRankTol);

  const NormedSpace& space() const { return space_; }
  const Mat& basis() const { return basis_; }
  /// Euclidean-orthonormal basis of the same span (empty for {0}).
  const Mat& onb() const { return onb_; }
  int dim() const { return static_cast<int>(onb_.cols()); }
  int ambient_dim() const { return space_.dim(); }
  bool is_zero() const { return dim() == 0; }
  double rank_tol() const { return rank_tol_; }

  /// Euclidean residual of u against the span (the component outside).
  Vec euclidean_residual(const Vec& u) const;

private:
  NormedSpace space_;
  Mat basis_;   // dim x k as supplied
  Mat onb_;     // dim x k orthonormal
  double rank_tol_ = kDefaultRankTol;
};

/// Columns spanning the kernel of A (Euclidean-orthonormal), rank decided at tol.
Mat null_space(const Mat& A, double rank_tol = kDefaultRankTol);
/// Numerical rank at relative tolerance.
int numerical_rank(const Mat& A, double rank_tol = kDefaultRankTol);
/// Orthonormal basis of the column space at tolerance.
Mat column_space(const Mat& A, double rank_tol = kDefaultRankTol);

Subspace sum(const Subspace& A, const Subspace& B);
Subspace intersect(const Subspace& A, const Subspace& B);

/// True when A is contained in B at tolerance (delta(A,B) = 0 numerically).
bool is_subspace_of(const Subspace& A, const Subspace& B);

/// Requires B inside A; throws ContainmentError with the sticking-out
/// direction otherwise.  Returns dim A - dim B.
int quotient_dim(const Subspace& A, const Subspace& B);

/// The annihilator M^perp inside the dual space (coordinates paired by
/// f(x) = sum conj(f_i) x_i; exact in finite dimensions).
Subspace annihilator(const Subspace& M);

/// Image A*S of a subspace under an invertible map given in coordinates.
Subspace map_subspace(const Mat& A, const Subspace& S);

/// Euclidean-orthogonal complement of B inside A (requires B inside A).
Subspace complement_within(const Subspace& A, const Subspace& B);

}  // namespace gapcert
