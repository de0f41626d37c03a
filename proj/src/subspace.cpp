#include "gapcert/subspace.hpp"

#include <Eigen/SVD>

namespace gapcert {

namespace {

Eigen::JacobiSVD<Mat> svd_of(const Mat& A, unsigned opts) {
  return Eigen::JacobiSVD<Mat>(A, opts);
}

}  // namespace

int numerical_rank(const Mat& A, double rank_tol) {
  if (A.cols() == 0 || A.rows() == 0) return 0;
  auto svd = svd_of(A, 0);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double top = sv[0];
  if (top <= 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > rank_tol * top) ++r;
  return r;
}

Mat null_space(const Mat& A, double rank_tol) {
  if (A.cols() == 0) return Mat(0, 0);
  if (A.rows() == 0) return Mat::Identity(A.cols(), A.cols());
  auto svd = svd_of(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double top = sv.size() ? sv[0] : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (top > 0.0 && sv[i] > rank_tol * top) ++r;
  return svd.matrixV().rightCols(A.cols() - r);
}

Mat column_space(const Mat& A, double rank_tol) {
  if (A.cols() == 0 || A.rows() == 0) return Mat(A.rows(), 0);
  auto svd = svd_of(A, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double top = sv.size() ? sv[0] : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (top > 0.0 && sv[i] > rank_tol * top) ++r;
  return svd.matrixU().leftCols(r);
}

Subspace::Subspace(NormedSpace space, Mat basis, double rank_tol)
    : space_(std::move(space)), basis_(std::move(basis)), rank_tol_(rank_tol) {
  if (basis_.size() > 0 && basis_.rows() != space_.dim())
    throw ShapeError("basis rows do not match ambient dimension");
  if (basis_.cols() == 0) {
    basis_.resize(space_.dim(), 0);
    onb_.resize(space_.dim(), 0);
    return;
  }
  if (!is_finite(basis_)) throw InputError("basis has non-finite entries");
  if (basis_.cols() > basis_.rows())
    throw InputError("more basis columns than ambient dimension");
  auto svd = svd_of(basis_, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv[sv.size() - 1] <= rank_tol_ * sv[0])
    throw InputError("basis is numerically rank-deficient at tolerance");
  onb_ = svd.matrixU();
}

Subspace Subspace::zero(NormedSpace space, double rank_tol) {
  return Subspace(std::move(space), Mat(0, 0), rank_tol);
}

Subspace Subspace::full(NormedSpace space, double rank_tol) {
  int n = space.dim();
  return Subspace(std::move(space), Mat::Identity(n, n), rank_tol);
}

Subspace Subspace::coordinate(NormedSpace space, std::vector<int> axes, double rank_tol) {
  Mat B = Mat::Zero(space.dim(), axes.size());
  for (size_t j = 0; j < axes.size(); ++j) {
    if (axes[j] < 0 || axes[j] >= space.dim()) throw InputError("axis out of range");
    B(axes[j], j) = 1.0;
  }
  return Subspace(std::move(space), std::move(B), rank_tol);
}

Vec Subspace::euclidean_residual(const Vec& u) const {
  if (u.size() != space_.dim()) throw ShapeError("vector does not match ambient dimension");
  if (dim() == 0) return u;
  return u - onb_ * (onb_.adjoint() * u);
}

Subspace sum(const Subspace& A, const Subspace& B) {
  if (A.space() != B.space()) throw ShapeError("subspaces live in different spaces");
  Mat cat(A.ambient_dim(), A.dim() + B.dim());
  cat << A.onb(), B.onb();
  double tol = std::max(A.rank_tol(), B.rank_tol());
  return Subspace(A.space(), column_space(cat, tol), tol);
}

Subspace intersect(const Subspace& A, const Subspace& B) {
  if (A.space() != B.space()) throw ShapeError("subspaces live in different spaces");
  double tol = std::max(A.rank_tol(), B.rank_tol());
  if (A.dim() == 0 || B.dim() == 0) return Subspace::zero(A.space(), tol);
  Mat cat(A.ambient_dim(), A.dim() + B.dim());
  cat << A.onb(), -B.onb();
  Mat ker = null_space(cat, tol);
  if (ker.cols() == 0) return Subspace::zero(A.space(), tol);
  Mat vecs = A.onb() * ker.topRows(A.dim());
  return Subspace(A.space(), column_space(vecs, tol), tol);
}

bool is_subspace_of(const Subspace& A, const Subspace& B) {
  if (A.space() != B.space()) throw ShapeError("subspaces live in different spaces");
  if (A.dim() == 0) return true;
  if (A.dim() > B.dim()) return false;
  Mat cat(A.ambient_dim(), A.dim() + B.dim());
  cat << B.onb(), A.onb();
  return numerical_rank(cat, std::max(A.rank_tol(), B.rank_tol())) == B.dim();
}

int quotient_dim(const Subspace& A, const Subspace& B) {
  if (A.space() != B.space()) throw ShapeError("subspaces live in different spaces");
  for (int j = 0; j < B.dim(); ++j) {
    Vec b = B.onb().col(j);
    Vec r = A.euclidean_residual(b);
    Mat cat(A.ambient_dim(), A.dim() + 1);
    cat << A.onb(), b;
    if (numerical_rank(cat, std::max(A.rank_tol(), B.rank_tol())) != A.dim())
      throw ContainmentError("quotient_dim: second subspace is not contained in the first",
                             r / std::max(r.norm(), 1e-300));
  }
  return A.dim() - B.dim();
}

Subspace annihilator(const Subspace& M) {
  // f annihilates M  <=>  onb^H f = 0.
  Mat ker = null_space(Mat(M.onb().adjoint()), M.rank_tol());
  return Subspace(M.space().dual(), ker, M.rank_tol());
}

Subspace map_subspace(const Mat& A, const Subspace& S) {
  if (A.rows() != S.ambient_dim() || A.cols() != S.ambient_dim())
    throw ShapeError("operator does not match ambient dimension");
  if (S.dim() == 0) return Subspace::zero(S.space(), S.rank_tol());
  // the map may collapse directions; the image is the column space at tolerance
  Mat img = column_space(Mat(A * S.onb()), S.rank_tol());
  if (img.cols() == 0) return Subspace::zero(S.space(), S.rank_tol());
  return Subspace(S.space(), img, S.rank_tol());
}

Subspace complement_within(const Subspace& A, const Subspace& B) {
  quotient_dim(A, B);  // containment check
  if (B.dim() == 0) return A;
  if (B.dim() == A.dim()) return Subspace::zero(A.space(), A.rank_tol());
  // Components of A's frame orthogonal to B, re-ranked.
  Mat res = A.onb() - B.onb() * (B.onb().adjoint() * A.onb());
  return Subspace(A.space(), column_space(res, A.rank_tol()), A.rank_tol());
}

}  // namespace gapcert
