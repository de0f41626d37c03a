#include "gapcert/perturb.hpp"

#include "gapcert/sampling.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>

namespace gapcert {

Mat givens_rotation(int n, int i, int j, double theta) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw InputError("givens_rotation: bad plane indices");
  Mat G = Mat::Identity(n, n);
  double c = std::cos(theta), s = std::sin(theta);
  G(i, i) = c;
  G(j, j) = c;
  G(i, j) = -s;
  G(j, i) = s;
  return G;
}

Mat shear(int n, int i, int j, double t) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw InputError("shear: bad indices");
  Mat S = Mat::Identity(n, n);
  S(i, j) = t;
  return S;
}

Mat scaling(int n, const RealVec& d) {
  if (d.size() != n) throw ShapeError("scaling: wrong diagonal length");
  Mat S = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) S(i, i) = d[i];
  return S;
}

double sigma_min(const Mat& A) {
  Eigen::JacobiSVD<Mat> svd(A);
  const auto& sv = svd.singularValues();
  return sv.size() ? sv[sv.size() - 1] : 0.0;
}

bool is_invertible(const Mat& A, double tol) {
  if (A.rows() != A.cols()) return false;
  Eigen::JacobiSVD<Mat> svd(A);
  const auto& sv = svd.singularValues();
  return sv.size() > 0 && sv[sv.size() - 1] > tol * sv[0];
}

Interval op_norm(const NormedSpace& X, const Mat& A, int budget, uint64_t seed) {
  if (A.rows() != X.dim() || A.cols() != X.dim())
    throw ShapeError("op_norm: operator does not match space dimension");
  if (X.is_l2()) {
    Mat T = A;
    if (X.norm_desc().weighted()) {
      RealVec d = X.l2_scaling();
      T = d.cast<Scalar>().asDiagonal() * A * d.cwiseInverse().cast<Scalar>().asDiagonal();
    }
    Eigen::JacobiSVD<Mat> svd(T);
    return Interval::exact(svd.singularValues()[0], Method::ExactL2);
  }
  Eigen::JacobiSVD<Mat> svd(A);
  double s2 = svd.singularValues()[0];
  auto [rlo, rhi] = X.euclidean_equivalence();
  double hi = (rhi / rlo) * s2;
  double lo = (rlo / rhi) * s2;
  Subspace full = Subspace::full(X);
  for (const auto& u : sphere_samples(full, budget, seed))
    lo = std::max(lo, X.norm(Vec(A * u)));
  if (lo > hi) lo = hi;
  return Interval{lo, hi, Method::Sampled};
}

Interval condition_number(const NormedSpace& X, const Mat& A, int budget, uint64_t seed) {
  if (!is_invertible(A)) throw InputError("condition_number: singular operator");
  Interval na = op_norm(X, A, budget, seed);
  Interval ni = op_norm(X, Mat(A.partialPivLu().inverse()), budget, seed + 1);
  return Interval{std::max(1.0, na.lo * ni.lo), na.hi * ni.hi,
                  na.method == Method::ExactL2 ? Method::ExactL2 : Method::Sampled};
}

}  // namespace gapcert
