#include "gapcert/reldim.hpp"

#include <Eigen/LU>
#include <cmath>

namespace gapcert {

namespace {

Subspace full_complement(const Subspace& S) {
  return complement_within(Subspace::full(S.space(), S.rank_tol()), S);
}

Subspace kernel_in(const Mat& T, const Subspace& M) {
  Subspace ker(M.space(), null_space(T, M.rank_tol()), M.rank_tol());
  return intersect(ker, M);
}

void require_maps_into(const Mat& T, const Subspace& M, const Subspace& N,
                       const char* what) {
  Subspace image = map_subspace(T, M);
  if (!is_subspace_of(image, N)) {
    Vec w = Vec::Zero(M.ambient_dim());
    for (int j = 0; j < image.dim(); ++j) {
      Vec r = N.euclidean_residual(image.onb().col(j));
      if (r.norm() > 1e-8) { w = r / r.norm(); break; }
    }
    throw ContainmentError(std::string(what) + ": (I+K)M is not contained in N", w);
  }
}

}  // namespace

PerturbationOperator PerturbationOperator::make(const NormedSpace& X, Mat K, int budget,
                                                uint64_t seed) {
  if (K.rows() != X.dim() || K.cols() != X.dim())
    throw ShapeError("perturbation does not match space dimension");
  if (!is_finite(K)) throw InputError("perturbation has non-finite entries");
  PerturbationOperator p;
  p.K = std::move(K);
  p.norm_K = op_norm(X, p.K, budget, seed);
  Mat T = p.iplusk();
  p.invertible_IplusK = is_invertible(T);
  if (p.invertible_IplusK) p.cond_a = condition_number(X, T, budget, seed + 1);
  return p;
}

RelDimReport relative_dim(const Subspace& M, const Subspace& N,
                          const PerturbationOperator& K) {
  if (M.space() != N.space()) throw ShapeError("subspaces live in different spaces");
  Mat T = K.iplusk();
  require_maps_into(T, M, N, "relative_dim");
  RelDimReport r;
  r.K_used = K;
  r.kernel_dim = kernel_in(T, M).dim();
  r.cokernel_dim = N.dim() - map_subspace(T, M).dim();
  r.value = r.kernel_dim - r.cokernel_dim;
  return r;
}

Verdict additivity_check(const Subspace& alpha, const Subspace& beta,
                         const Subspace& gamma, const PerturbationOperator& K,
                         const PerturbationOperator& L) {
  RelDimReport ab = relative_dim(alpha, beta, K);
  RelDimReport bg = relative_dim(beta, gamma, L);
  Mat composite = L.iplusk() * K.iplusk() - Mat::Identity(K.K.rows(), K.K.cols());
  PerturbationOperator C = PerturbationOperator::make(alpha.space(), composite, 64);
  RelDimReport ag = relative_dim(alpha, gamma, C);
  Verdict v;
  v.set("[a-b]", static_cast<double>(ab.value));
  v.set("[b-c]", static_cast<double>(bg.value));
  v.set("[a-c]", static_cast<double>(ag.value));
  v.hypothesis_ok = true;
  v.conclusion_checked = true;
  v.conclusion_ok = (ag.value == ab.value + bg.value);
  return v;
}

GraphOperator graph_operator(const Subspace& alpha, const Subspace& beta,
                             const Subspace& gamma) {
  const NormedSpace& X = alpha.space();
  const int n = X.dim(), k = alpha.dim();
  if (alpha.dim() + beta.dim() != n || intersect(alpha, beta).dim() != 0)
    throw InputError("graph_operator: alpha and beta do not decompose the space");
  if (gamma.dim() != k || intersect(gamma, beta).dim() != 0)
    throw InputError("graph_operator: gamma is not a complement of beta");

  Mat AB(n, n);
  AB << alpha.onb(), beta.onb();
  Mat coeff = AB.partialPivLu().solve(gamma.onb());  // alpha/beta coordinates of gamma
  Mat Talpha = coeff.topRows(k);                     // alpha-coords of P gamma
  Eigen::FullPivLU<Mat> lu(Talpha);
  if (lu.rank() < k)
    throw InputError("graph_operator: projection of gamma onto alpha is singular");
  Mat G = gamma.onb() * lu.inverse();  // columns g_j with P g_j = alpha basis vector j

  GraphOperator out;
  out.A = (G - alpha.onb()) * alpha.onb().adjoint();
  out.F_iso = true;
  Subspace graph(X, Mat(alpha.onb() + out.A * alpha.onb()), alpha.rank_tol());
  Interval dh = gap_delta_hat(graph, gamma, 256, 1);
  out.checks.set("delta_hat(Graph(A),gamma)", dh);
  out.checks.hypothesis_ok = true;
  out.checks.conclusion_checked = true;
  out.checks.conclusion_ok = dh.hi < 1e-7;
  return out;
}

NormalizedPerturbation normalize_perturbation(const Subspace& M, const Subspace& N,
                                              const PerturbationOperator& K) {
  const NormedSpace& X = M.space();
  Mat T = K.iplusk();
  require_maps_into(T, M, N, "normalize_perturbation");

  NormalizedPerturbation out;
  Subspace ker0 = kernel_in(T, M);
  out.dropped_dim = ker0.dim();
  out.M1 = complement_within(M, ker0);

  if (K.invertible_IplusK) {
    out.K1 = K;
    out.N1 = map_subspace(T, out.M1);
    return out;
  }

  Subspace C = full_complement(out.M1);
  Subspace TM1 = map_subspace(T, out.M1);
  Subspace D = full_complement(TM1);
  Mat src(X.dim(), X.dim()), dst(X.dim(), X.dim());
  src << out.M1.onb(), C.onb();
  dst << T * out.M1.onb(), D.onb();
  Mat J = dst * src.partialPivLu().inverse();
  out.K1 = PerturbationOperator::make(X, Mat(J - Mat::Identity(X.dim(), X.dim())), 64);
  if (!out.K1.invertible_IplusK)
    throw InputError("normalize_perturbation: construction failed to invert");
  out.N1 = map_subspace(J, out.M1);
  return out;
}

PerturbationOperator canonical_perturbation(const Subspace& M, const Subspace& N,
                                            int budget, uint64_t seed) {
  const NormedSpace& X = M.space();
  const int n = X.dim();
  Mat A = Mat::Zero(n, n);
  if (M.dim() > 0 && N.dim() > 0) {
    Mat C = Mat::Zero(N.dim(), M.dim());
    for (int j = 0; j < std::min(N.dim(), M.dim()); ++j) C(j, j) = 1.0;
    A = N.onb() * C * M.onb().adjoint();
  }
  Mat PM = M.dim() > 0 ? Mat(M.onb() * M.onb().adjoint()) : Mat::Zero(n, n);
  return PerturbationOperator::make(X, Mat(A - PM), budget, seed);
}

Verdict verify_reldim_stability(const Subspace& M, const Subspace& N,
                                const Subspace& Mp, const Subspace& Np,
                                const PerturbationOperator& K1, const Subspace& U_in,
                                const Subspace& V_in, RelDimVariant variant, int budget,
                                uint64_t seed) {
  const NormedSpace& X = M.space();
  Verdict v;
  if (!K1.invertible_IplusK || !K1.cond_a)
    throw InputError("verify_reldim_stability: I+K1 must be invertible");
  Mat T = K1.iplusk();
  Subspace TM = map_subspace(T, M);
  Subspace cap = intersect(TM, N);
  Subspace U = U_in.is_zero() ? complement_within(N, cap) : U_in;
  Subspace V = V_in.is_zero() ? complement_within(TM, cap) : V_in;

  double a = K1.cond_a->hi;
  Interval gU = gap_gamma(U, TM, budget, seed);
  Interval dMpM = gap_delta(Mp, M, budget, seed + 1);
  Interval dNNp = gap_delta(N, Np, budget, seed + 2);
  Interval dNpN = gap_delta(Np, N, budget, seed + 3);
  Interval dMMp = gap_delta(M, Mp, budget, seed + 4);
  Interval gNV = gap_gamma(N, V, budget, seed + 5);
  Interval gMV = gap_gamma(M, V, budget, seed + 6);
  v.set("a", a);
  v.set("gamma(U,(I+K1)M)", gU);
  v.set("delta(M',M)", dMpM);
  v.set("delta(N,N')", dNNp);
  v.set("delta(N',N)", dNpN);
  v.set("delta(M,M')", dMMp);
  v.set("gamma(N,V)", gNV);
  v.set("gamma(M,V)", gMV);

  auto small_gate = [&](bool record) {
    if (!(a * dMpM.hi < gU.lo)) {
      if (record) v.notes.push_back("gate: delta(M',M) not certified below gamma/a");
      return false;
    }
    double th1 = a * (1.0 + gU.lo) * dMpM.hi / (gU.lo - a * dMpM.hi);
    double e1 = (1.0 + dNNp.hi / std::max(gNV.lo, 1e-300)) * (1.0 + th1);
    if (record) {
      v.set("theta_1", th1);
      v.set("eta_1", e1);
    }
    if (!(e1 < 2.0)) {
      if (record) v.notes.push_back("gate: eta_1 not certified below 2");
      return false;
    }
    return true;
  };
  auto large_gate = [&](bool record) {
    if (!(a * dNpN.hi < gU.lo)) {
      if (record) v.notes.push_back("gate: delta(N',N) not certified below gamma/a");
      return false;
    }
    double th2 = a * (1.0 + gU.lo) * dNpN.hi / (gU.lo - a * dNpN.hi);
    double e2 = (1.0 + dMMp.hi / std::max(gMV.lo, 1e-300)) * (1.0 + th2);
    if (record) {
      v.set("theta_2", th2);
      v.set("eta_2", e2);
    }
    if (!(e2 < 2.0)) {
      if (record) v.notes.push_back("gate: eta_2 not certified below 2");
      return false;
    }
    return true;
  };

  bool ok = false;
  switch (variant) {
    case RelDimVariant::V14c: ok = small_gate(true); break;
    case RelDimVariant::V14d: ok = large_gate(true); break;
    case RelDimVariant::V14e: ok = small_gate(true) && large_gate(true); break;
  }
  v.hypothesis_ok = ok;
  if (!ok) return v;

  int base = relative_dim(M, N, canonical_perturbation(M, N)).value;
  int pert = relative_dim(Mp, Np, canonical_perturbation(Mp, Np)).value;
  v.set("[M-N]", static_cast<double>(base));
  v.set("[M'-N']", static_cast<double>(pert));
  v.conclusion_checked = true;
  switch (variant) {
    case RelDimVariant::V14c: v.conclusion_ok = pert <= base; break;
    case RelDimVariant::V14d: v.conclusion_ok = pert >= base; break;
    case RelDimVariant::V14e: v.conclusion_ok = pert == base; break;
  }
  return v;
}

}  // namespace gapcert
