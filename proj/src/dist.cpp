#include "gapcert/dist.hpp"

#include "gapcert/lp.hpp"

#include <cmath>

namespace gapcert {

namespace {

Scalar unit_phase(Scalar z) {
  double a = std::abs(z);
  return a > 0.0 ? z / a : Scalar(0.0, 0.0);
}

/// f in the Euclidean annihilator of N closest to f0 (component of f0
/// orthogonal to N; this keeps f0's pairing with directions outside N).
Vec project_to_annihilator(const Vec& f0, const Subspace& N) {
  if (N.is_zero()) return f0;
  return f0 - N.onb() * (N.onb().adjoint() * f0);
}

double certificate_lower_bound(const NormedSpace& X, const Vec& u, const Subspace& N,
                               Vec& cert) {
  cert = project_to_annihilator(cert, N);
  double dn = X.dual_norm(cert);
  if (!(dn > 1e-14)) return 0.0;
  return std::abs(Scalar(cert.adjoint() * u)) / dn;
}

struct LpOutcome {
  bool ok = false;
  Vec coeff;
  Vec dual_functional;
};

LpOutcome lp_l1(const NormedSpace& X, const Vec& u, const Subspace& N) {
  const int n = X.dim(), k = N.dim();
  RealMat B = N.onb().real();
  RealVec w(n);
  for (int i = 0; i < n; ++i) w[i] = X.weight(i);
  // min w'(rp+rn)  s.t.  B(cp-cn) + rp - rn = u
  RealMat A(n, 2 * k + 2 * n);
  A << B, -B, RealMat::Identity(n, n), -RealMat::Identity(n, n);
  RealVec c = RealVec::Zero(2 * k + 2 * n);
  c.segment(2 * k, n) = w;
  c.tail(n) = w;
  LpResult r = solve_lp(A, u.real(), c);
  LpOutcome out;
  if (!r.optimal) return out;
  out.ok = true;
  out.coeff = (r.x.head(k) - r.x.segment(k, k)).cast<Scalar>();
  out.dual_functional = r.dual.cast<Scalar>();
  return out;
}

LpOutcome lp_linf(const NormedSpace& X, const Vec& u, const Subspace& N) {
  const int n = X.dim(), k = N.dim();
  RealMat B = N.onb().real();
  RealVec w(n);
  for (int i = 0; i < n; ++i) w[i] = X.weight(i);
  // min t  s.t.  w_i (u - Bc)_i <= t  and  -w_i (u - Bc)_i <= t
  const int nv = 2 * k + 1 + 2 * n;
  RealMat A = RealMat::Zero(2 * n, nv);
  RealVec b(2 * n);
  for (int i = 0; i < n; ++i) {
    A.block(i, 0, 1, k) = w[i] * B.row(i);
    A.block(i, k, 1, k) = -w[i] * B.row(i);
    A(i, 2 * k) = 1.0;
    A(i, 2 * k + 1 + i) = -1.0;
    b[i] = w[i] * u.real()[i];
    A.block(n + i, 0, 1, k) = -w[i] * B.row(i);
    A.block(n + i, k, 1, k) = w[i] * B.row(i);
    A(n + i, 2 * k) = 1.0;
    A(n + i, 2 * k + 1 + n + i) = -1.0;
    b[n + i] = -w[i] * u.real()[i];
  }
  RealVec c = RealVec::Zero(nv);
  c[2 * k] = 1.0;
  LpResult r = solve_lp(A, b, c);
  LpOutcome out;
  if (!r.optimal) return out;
  out.ok = true;
  out.coeff = (r.x.head(k) - r.x.segment(k, k)).cast<Scalar>();
  Vec f(n);
  for (int i = 0; i < n; ++i) f[i] = Scalar(w[i] * (r.dual[i] - r.dual[n + i]), 0.0);
  out.dual_functional = f;
  return out;
}

/// Convex descent on phi(c) = ||u - B c|| from the Euclidean projection.
Vec descend(const NormedSpace& X, const Vec& u, const Subspace& N, int iters = 200) {
  const Mat& B = N.onb();
  Vec c = B.adjoint() * u;
  double best = X.norm(Vec(u - B * c));
  Vec cbest = c;
  double step = 1.0;
  for (int it = 0; it < iters; ++it) {
    Vec r = u - B * c;
    Vec f = norming_functional(X, r);
    Vec g = B.adjoint() * f;
    if (g.norm() < 1e-13 * (1.0 + best)) break;
    bool moved = false;
    for (int bt = 0; bt < 30; ++bt) {
      Vec cand = c + step * g;
      double v = X.norm(Vec(u - B * cand));
      if (v < best - 1e-15) {
        c = cand;
        best = v;
        cbest = c;
        moved = true;
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
    if (!moved && step < 1e-14) break;
  }
  return cbest;
}

}  // namespace

Vec norming_functional(const NormedSpace& X, const Vec& r) {
  double nr = X.norm(r);
  Vec f = Vec::Zero(X.dim());
  if (!(nr > 1e-300)) return f;
  const double p = X.norm_desc().p;
  if (p == kInf) {
    int best = 0;
    double m = -1.0;
    for (int i = 0; i < X.dim(); ++i) {
      double v = X.weight(i) * std::abs(r[i]);
      if (v > m) { m = v; best = i; }
    }
    f[best] = X.weight(best) * unit_phase(r[best]);
    return f;
  }
  if (p == 1.0) {
    for (int i = 0; i < X.dim(); ++i) f[i] = X.weight(i) * unit_phase(r[i]);
    return f;
  }
  for (int i = 0; i < X.dim(); ++i)
    f[i] = X.weight(i) * std::pow(std::abs(r[i]) / nr, p - 1.0) * unit_phase(r[i]);
  return f;
}

double dist_euclidean(const Vec& u, const Subspace& N) {
  if (u.size() != N.ambient_dim()) throw ShapeError("vector does not match ambient dimension");
  return N.euclidean_residual(u).norm();
}

DistResult dist_to_subspace_detail(const Vec& u, const Subspace& N) {
  const NormedSpace& X = N.space();
  if (u.size() != X.dim()) throw ShapeError("vector does not match ambient dimension");
  if (!is_finite(u)) throw InputError("vector has non-finite entries");

  DistResult res;
  res.nearest = Vec::Zero(X.dim());

  if (N.is_zero()) {
    res.dist = Interval::exact(X.norm(u), Method::ExactL2);
    res.certificate = norming_functional(X, u);
    return res;
  }

  if (X.is_l2()) {
    Vec v;
    if (X.norm_desc().weighted()) {
      RealVec d = X.l2_scaling();
      Mat DB = d.cast<Scalar>().asDiagonal() * N.onb();
      Mat Q = column_space(DB, N.rank_tol());
      Vec du = d.cast<Scalar>().asDiagonal() * u;
      Vec pr = Q * (Q.adjoint() * du);
      v = d.cwiseInverse().cast<Scalar>().asDiagonal() * pr;
    } else {
      v = N.onb() * (N.onb().adjoint() * u);
    }
    res.nearest = v;
    res.dist = Interval::exact(X.norm(Vec(u - v)), Method::ExactL2);
    res.certificate = norming_functional(X, Vec(u - v));
    res.certificate = res.certificate - N.onb() * (N.onb().adjoint() * res.certificate);
    return res;
  }

  const double p = X.norm_desc().p;
  Vec coeff;
  Vec dual_cert;
  Method method = Method::Subgradient;
  if (X.field() == Field::Real && (p == 1.0 || p == kInf)) {
    LpOutcome lp = (p == 1.0) ? lp_l1(X, u, N) : lp_linf(X, u, N);
    if (lp.ok) {
      coeff = lp.coeff;
      dual_cert = lp.dual_functional;
      method = Method::LpLinearProgram;
    }
  }
  if (coeff.size() == 0) coeff = descend(X, u, N);

  Vec r = u - N.onb() * coeff;
  double hi = X.norm(r);
  res.nearest = N.onb() * coeff;
  if (dual_cert.size() == 0) dual_cert = norming_functional(X, r);
  double lo = certificate_lower_bound(X, u, N, dual_cert);
  res.certificate = dual_cert;

  // Intersect with equivalence-transfer bounds around the Euclidean value.
  auto [rlo, rhi] = X.euclidean_equivalence();
  double d2 = dist_euclidean(u, N);
  lo = std::max(lo, rlo * d2);
  hi = std::min(hi, rhi * d2);
  if (lo > hi) lo = hi;
  res.dist = Interval{lo, hi, method};
  return res;
}

Interval dist_to_subspace(const Vec& u, const Subspace& N) {
  return dist_to_subspace_detail(u, N).dist;
}

}  // namespace gapcert
