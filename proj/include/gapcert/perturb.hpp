#pragma once

#include "gapcert/subspace.hpp"

namespace gapcert {

/// Plane rotation by theta in coordinates (i, j), identity elsewhere.
Mat givens_rotation(int n, int i, int j, double theta);

/// I + t E_ij (i != j).
Mat shear(int n, int i, int j, double t);

/// Diagonal scaling.
Mat scaling(int n, const RealVec& d);

/// Certified enclosure of the operator norm of A acting on X.  Exact for
/// p = 2 (largest singular value after the weight transform), otherwise
/// sampled lower bounds with norm-equivalence upper bounds.
Interval op_norm(const NormedSpace& X, const Mat& A, int budget = 500,
                 uint64_t seed = 0);

double sigma_min(const Mat& A);

bool is_invertible(const Mat& A, double tol = kDefaultRankTol);

/// Enclosure of ||A|| ||A^{-1}||; throws InputError when A is singular.
Interval condition_number(const NormedSpace& X, const Mat& A, int budget = 500,
                          uint64_t seed = 0);

}  // namespace gapcert
