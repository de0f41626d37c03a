#include "gapcert/gap.hpp"

#include "gapcert/sampling.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace gapcert {

namespace {

/// Euclidean-orthonormal basis of D*S when the norm is weighted l2
/// (so Euclidean geometry on the transformed coordinates is the space's own).
Mat scaled_onb(const Subspace& S, const NormedSpace& X) {
  if (!X.norm_desc().weighted()) return S.onb();
  RealVec d = X.l2_scaling();
  return column_space(Mat(d.cast<Scalar>().asDiagonal() * S.onb()), S.rank_tol());
}

double sigma_max_residual(const Mat& QM, const Mat& QN, Vec* right_vec = nullptr) {
  Mat R = QM - QN * (QN.adjoint() * QM);
  Eigen::JacobiSVD<Mat> svd(R, right_vec ? Eigen::ComputeThinV : 0);
  double v = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  if (right_vec) *right_vec = svd.matrixV().col(0);
  return v;
}

double sigma_min_residual(const Mat& QM, const Mat& QN) {
  Mat R = QM - QN * (QN.adjoint() * QM);
  Eigen::JacobiSVD<Mat> svd(R);
  const auto& sv = svd.singularValues();
  return sv.size() ? sv[sv.size() - 1] : 0.0;
}

struct DeltaOut {
  Interval val;
  std::optional<Vec> maximizer;
  int samples = 0;
};

Vec unscale_unit(const NormedSpace& X, Vec v) {
  if (X.is_l2() && X.norm_desc().weighted()) {
    RealVec d = X.l2_scaling();
    for (int i = 0; i < X.dim(); ++i) v[i] /= d[i];
  }
  double n = X.norm(v);
  return n > 0 ? Vec(v / n) : v;
}

DeltaOut delta_directed(const Subspace& M, const Subspace& N, int budget, uint64_t seed) {
  const NormedSpace& X = M.space();
  DeltaOut out;
  if (M.is_zero()) {
    out.val = Interval::point(0.0, Method::ExactL2);
    return out;
  }
  if (N.is_zero()) {
    out.val = Interval::point(1.0, Method::ExactL2);
    Vec u = M.onb().col(0);
    out.maximizer = Vec(u / X.norm(u));
    return out;
  }
  if (X.is_l2()) {
    Vec c;
    double d = sigma_max_residual(scaled_onb(M, X), scaled_onb(N, X), &c);
    d = std::min(d, 1.0);
    out.val = Interval::exact(d, Method::ExactL2);
    out.maximizer = unscale_unit(X, Vec(scaled_onb(M, X) * c));
    return out;
  }
  double d2 = sigma_max_residual(M.onb(), N.onb());
  auto [rlo, rhi] = X.euclidean_equivalence();
  double hi = std::min(1.0, (rhi / rlo) * d2);
  double lo = (rlo / rhi) * d2;
  auto cheap = [&](const Vec& u) { return rlo * dist_euclidean(u, N); };
  auto samples = sphere_samples(M, budget, seed);
  Vec best;
  double bv = -1.0;
  for (const auto& u : samples) {
    double s = cheap(u);
    if (s > bv) { bv = s; best = u; }
  }
  out.samples = static_cast<int>(samples.size());
  if (best.size() > 0) {
    best = refine_on_sphere(M, best, cheap, 20, seed);
    Interval dv = dist_to_subspace(best, N);
    lo = std::max(lo, dv.lo);
    out.maximizer = best;
  }
  if (lo > hi) lo = hi;
  out.val = Interval{lo, hi, Method::Sampled};
  return out;
}

Interval gamma_directed(const Subspace& M, const Subspace& N, int budget, uint64_t seed) {
  const NormedSpace& X = M.space();
  if (is_subspace_of(M, N)) return Interval::point(1.0, Method::ExactL2);
  Subspace cap = intersect(M, N);
  Subspace M1 = complement_within(M, cap);
  if (X.is_l2()) {
    Mat cap_s = scaled_onb(cap, X);
    Mat QM_s = scaled_onb(M, X);
    Mat M1_s = cap_s.cols() == 0
                   ? QM_s
                   : column_space(Mat(QM_s - cap_s * (cap_s.adjoint() * QM_s)), M.rank_tol());
    double g = N.is_zero() ? 1.0 : sigma_min_residual(M1_s, scaled_onb(N, X));
    return Interval::exact(std::min(g, 1.0), Method::ExactL2);
  }
  double g2;
  if (N.is_zero()) {
    g2 = 1.0;
  } else {
    g2 = sigma_min_residual(M1.onb(), N.onb());
  }
  auto [rlo, rhi] = X.euclidean_equivalence();
  double lo = (rlo / rhi) * g2;
  double hi = std::min(1.0, (rhi / rlo) * g2);
  // Any u in M outside N gives a certified upper bound on the infimum.
  auto samples = sphere_samples(M1, std::max(budget / 4, 8), seed ^ 0xabcdefULL);
  auto ratio_hi = [&](const Vec& u) -> double {
    Interval num = dist_to_subspace(u, N);
    Interval den = cap.is_zero() ? Interval::exact(X.norm(u), Method::ExactL2)
                                 : dist_to_subspace(u, cap);
    if (!(den.lo > 1e-12)) return kInf;
    return num.hi / den.lo;
  };
  Vec best;
  double bv = kInf;
  for (const auto& u : samples) {
    double c = rlo * dist_euclidean(u, cap);
    double s = c > 1e-12 ? (rhi * dist_euclidean(u, N)) / c : kInf;
    if (s < bv) { bv = s; best = u; }
  }
  if (best.size() > 0) {
    best = refine_on_sphere(
        M1, best,
        [&](const Vec& u) {
          double c = rlo * dist_euclidean(u, cap);
          return c > 1e-12 ? -(rhi * dist_euclidean(u, N)) / c : -kInf;
        },
        20, seed ^ 0x1234ULL);
    hi = std::min(hi, ratio_hi(best));
  }
  if (lo > hi) lo = hi;
  return Interval{lo, hi, Method::Sampled};
}

Interval interval_max(const Interval& a, const Interval& b) {
  Method m = (a.method == b.method) ? a.method : Method::Sampled;
  return Interval{std::max(a.lo, b.lo), std::max(a.hi, b.hi), m};
}

Interval interval_min(const Interval& a, const Interval& b) {
  Method m = (a.method == b.method) ? a.method : Method::Sampled;
  return Interval{std::min(a.lo, b.lo), std::min(a.hi, b.hi), m};
}

}  // namespace

double gap_l2_exact(const Subspace& M, const Subspace& N) {
  if (M.space() != N.space()) throw ShapeError("subspaces live in different spaces");
  if (M.is_zero()) return 0.0;
  if (N.is_zero()) return 1.0;
  return std::min(sigma_max_residual(M.onb(), N.onb()), 1.0);
}

double gamma_l2_exact(const Subspace& M, const Subspace& N) {
  if (M.space() != N.space()) throw ShapeError("subspaces live in different spaces");
  if (is_subspace_of(M, N)) return 1.0;
  if (N.is_zero()) return 1.0;
  Subspace cap = intersect(M, N);
  Mat M1 = cap.is_zero()
               ? M.onb()
               : column_space(Mat(M.onb() - cap.onb() * (cap.onb().adjoint() * M.onb())),
                              M.rank_tol());
  return std::min(sigma_min_residual(M1, N.onb()), 1.0);
}

Interval gap_delta(const Subspace& M, const Subspace& N, int budget, uint64_t seed) {
  if (M.space() != N.space()) throw ShapeError("subspaces live in different spaces");
  return delta_directed(M, N, budget, seed).val;
}

Interval gap_gamma(const Subspace& M, const Subspace& N, int budget, uint64_t seed) {
  if (M.space() != N.space()) throw ShapeError("subspaces live in different spaces");
  return gamma_directed(M, N, budget, seed);
}

Interval gap_delta_hat(const Subspace& M, const Subspace& N, int budget, uint64_t seed) {
  return interval_max(gap_delta(M, N, budget, seed), gap_delta(N, M, budget, seed));
}

GapReport gap_report(const Subspace& M, const Subspace& N, int budget, uint64_t seed,
                     bool with_hausdorff) {
  if (M.space() != N.space()) throw ShapeError("subspaces live in different spaces");
  GapReport r;
  r.seed = seed;
  DeltaOut dmn = delta_directed(M, N, budget, seed);
  DeltaOut dnm = delta_directed(N, M, budget, seed + 1);
  r.delta_MN = dmn.val;
  r.delta_NM = dnm.val;
  r.delta_MN_maximizer = dmn.maximizer;
  r.delta_NM_maximizer = dnm.maximizer;
  r.delta_hat = interval_max(r.delta_MN, r.delta_NM);
  r.gamma_MN = gamma_directed(M, N, budget, seed + 2);
  r.gamma_NM = gamma_directed(N, M, budget, seed + 3);
  r.gamma_hat = interval_min(r.gamma_MN, r.gamma_NM);
  r.samples_used = dmn.samples + dnm.samples;
  if (with_hausdorff) {
    if (M.is_zero() && N.is_zero()) {
      r.hausdorff = Interval::point(0.0, Method::ExactL2);
    } else if (M.is_zero() != N.is_zero()) {
      r.hausdorff = Interval::point(2.0, Method::ExactL2);
    } else {
      r.hausdorff =
          Interval{r.delta_hat.lo, std::min(2.0 * r.delta_hat.hi, 2.0), Method::Sampled};
    }
  }
  return r;
}

}  // namespace gapcert
