#include "gapcert/splitting.hpp"

#include "gapcert/sampling.hpp"

#include <cmath>

namespace gapcert {

namespace {

constexpr double kB = 0.41421356237309515;  // sqrt(2) - 1

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

Subspace span_of(const NormedSpace& X, const std::vector<Vec>& vecs, double rank_tol) {
  if (vecs.empty()) return Subspace::zero(X, rank_tol);
  Mat B(X.dim(), vecs.size());
  for (size_t j = 0; j < vecs.size(); ++j) B.col(j) = vecs[j];
  return Subspace(X, B, rank_tol);
}

double coef_a(double a, int i) {
  if (i == 0) return 1.0;
  return std::pow(a, i) / (i * std::pow(1.0 + a, i - 1));
}

}  // namespace

BallDistanceCertificate ball_distance_certificate(const Subspace& M,
                                                  const std::vector<Vec>& u,
                                                  const RealVec& deltas, int budget,
                                                  uint64_t seed) {
  const NormedSpace& X = M.space();
  const int n = static_cast<int>(u.size());
  if (deltas.size() != n) throw ShapeError("one delta per chain vector required");
  BallDistanceCertificate cert;
  cert.u = u;
  cert.deltas = deltas;

  std::vector<Vec> chain;
  for (int k = 0; k < n; ++k) {
    if (!(deltas[k] > 0.0 && deltas[k] <= 1.0))
      throw InputError("deltas must lie in (0, 1]");
    if (std::abs(X.norm(u[k]) - 1.0) > 1e-8)
      throw InputError("chain vectors must be unit vectors");
    Subspace base = chain.empty() ? M : sum(M, span_of(X, chain, M.rank_tol()));
    Interval d = dist_to_subspace(u[k], base);
    cert.checks.set("dist(u_" + std::to_string(k + 1) + ")", d);
    if (!(d.lo >= deltas[k] * (1.0 - 1e-9) - 1e-12))
      throw GateError("chain hypothesis fails at k=" + std::to_string(k + 1) +
                      ": certified dist " + fmt(d.lo) + " < " + fmt(deltas[k]));
    chain.push_back(u[k]);
    int q = quotient_dim(sum(M, span_of(X, chain, M.rank_tol())), M);
    if (q != k + 1)
      throw InputError("chain vector " + std::to_string(k + 1) +
                       " does not extend M's span");
  }
  cert.V = span_of(X, chain, M.rank_tol());

  cert.Delta.resize(n);
  for (int k = 0; k < n; ++k) {
    double num = 1.0, den = 1.0;
    for (int i = k; i < n; ++i) num *= deltas[i];
    for (int i = k + 1; i < n; ++i) den *= 1.0 + deltas[i];
    cert.Delta[k] = num / den;
  }
  cert.gamma_bound = n > 0 ? cert.Delta[0] / n : 1.0;

  cert.checks.hypothesis_ok = true;
  cert.checks.conclusion_checked = true;
  bool ok = true;

  // Random coefficient combinations against the linear lower bound.
  LowDiscrepancy seq(std::max(2, n), seed);
  for (int t = 0; t < 32 && n > 0; ++t) {
    RealVec aco = seq.next_gaussian(n);
    Vec x = Vec::Zero(X.dim());
    double l1 = 0.0;
    for (int k = 0; k < n; ++k) {
      x += Scalar(aco[k], 0.0) * u[k];
      l1 += std::abs(aco[k]);
    }
    Interval d = dist_to_subspace(x, M);
    if (d.hi < cert.gamma_bound * l1 * (1.0 - 1e-10)) {
      ok = false;
      cert.checks.notes.push_back("combination bound certifiably violated at trial " +
                                  std::to_string(t));
    }
  }

  Interval g = gap_gamma(cert.V, M, budget, seed);
  cert.checks.set("gamma(V,M)", g);
  cert.checks.set("gamma_bound", cert.gamma_bound);
  if (g.hi < cert.gamma_bound * (1.0 - 1e-10)) {
    ok = false;
    cert.checks.notes.push_back("minimum-gap bound certifiably violated");
  }
  cert.checks.conclusion_ok = ok;
  return cert;
}

TransportResult transport_subspace(const Subspace& V, const Subspace& N,
                                   const Subspace& Np, int budget, uint64_t seed) {
  const NormedSpace& X = V.space();
  if (!is_subspace_of(V, N))
    throw ContainmentError("transport_subspace: V must lie inside N",
                           Vec::Zero(X.dim()));
  const int n = V.dim();
  TransportResult out;
  if (n == 0) {
    out.Vp = Subspace::zero(X, V.rank_tol());
    out.bound = 0.0;
    out.checks.hypothesis_ok = true;
    out.checks.conclusion_checked = true;
    out.checks.conclusion_ok = true;
    return out;
  }
  double cn = std::pow(2.0, n - 1) * n;
  Interval dNNp = gap_delta(N, Np, budget, seed);
  out.checks.set("delta(N,N')", dNNp);
  out.checks.set("threshold", 1.0 / cn);
  if (!(dNNp.hi < 1.0 / cn))
    throw GateError("transport gate fails: delta(N,N') not certified below " +
                    fmt(1.0 / cn));

  // Auerbach-style chain in V: each vector far from the span of the previous.
  std::vector<Vec> chain, moved;
  for (int k = 0; k < n; ++k) {
    Subspace prev = span_of(X, chain, V.rank_tol());
    GapReport r = gap_report(V, prev, budget, seed + 17 * k);
    Vec v = r.delta_MN_maximizer ? *r.delta_MN_maximizer : Vec(V.onb().col(k));
    v /= X.norm(v);
    chain.push_back(v);
    moved.push_back(dist_to_subspace_detail(v, Np).nearest);
  }

  double eps = 1e-6 * std::max(dNNp.hi, 1e-9);
  double q = cn * (dNNp.hi + eps);
  out.bound = q / (1.0 - q);
  out.checks.set("bound", out.bound);
  out.checks.hypothesis_ok = true;
  out.checks.conclusion_checked = true;
  bool ok = true;
  try {
    out.Vp = span_of(X, moved, V.rank_tol());
  } catch (const InputError&) {
    out.checks.notes.push_back("moved chain lost rank: dimension conclusion violated");
    out.Vp = Subspace(X, column_space(span_of(X, moved, 1e-30).basis(), V.rank_tol()),
                      V.rank_tol());
    ok = false;
  }
  if (out.Vp.dim() != n) ok = false;
  Interval dh = gap_delta_hat(V, out.Vp, budget, seed + 1000);
  out.checks.set("delta_hat(V,V')", dh);
  if (dh.lo > out.bound * (1.0 + 1e-10) + 1e-12) {
    ok = false;
    out.checks.notes.push_back("delta_hat(V,V') certifiably exceeds the bound");
  }
  out.checks.conclusion_ok = ok;
  return out;
}

SplittingResult split(const Subspace& L, const Subspace& S, const Subspace& N, double a,
                      int budget, uint64_t seed) {
  const NormedSpace& X = L.space();
  if (S.space() != X || N.space() != X)
    throw ShapeError("split: subspaces live in different spaces");
  if (intersect(L, S).dim() != 0)
    throw InputError("split: L and S must be independent");
  if (!(a > 0.0 && a < kB)) throw InputError("split: a must lie in (0, sqrt(2)-1)");

  SplittingResult res;
  Verdict& v = res.checks;
  Subspace M = sum(L, S);
  const int n = S.dim();

  Interval dNM = gap_delta(N, M, budget, seed);
  Interval dLN = gap_delta(L, N, budget, seed + 1);
  Interval gLS = gap_gamma(L, S, budget, seed + 2);
  v.set("delta(N,M)", dNM);
  v.set("delta(L,N)", dLN);
  v.set("gamma(L,S)", gLS);

  auto delta_i = [&](int i) {
    if (i == 0) return dNM.hi;
    double ai = coef_a(a, i);
    return std::min(dNM.hi * (1.0 + ai) / ai, 1.0);
  };

  res.constants["a"] = a;
  res.constants["b"] = kB;
  for (int i = 1; i <= n + 1; ++i)
    res.constants["a_" + std::to_string(i)] = coef_a(a, i);

  // The gate below is only needed to cap the chain length at n; the greedy
  // loop enforces that cap directly, so a failed gate downgrades the verdict
  // instead of aborting the construction.
  double gate = (1.0 + delta_i(n + 1)) * (1.0 + dLN.hi / std::max(gLS.lo, 1e-300));
  v.set("gate", gate);
  bool gate_ok = gate < 2.0;
  if (!gate_ok)
    v.notes.push_back("existence gate (1+delta_{n+1})(1+delta(L,N)/gamma(L,S)) = " +
                      fmt(gate) + " >= 2; chain length capped at dim S directly");

  // Step 1: greedy extraction of directions of M far from N.
  std::vector<Vec> vchain;
  int k = 0;
  while (k < n) {
    Subspace V = span_of(X, vchain, M.rank_tol());
    Subspace NV = vchain.empty() ? N : sum(N, V);
    // prefer candidates that also avoid L, so the chain extends L + V
    GapReport rl = gap_report(M, sum(L, NV), budget, seed + 40 + k);
    if (rl.delta_MN.lo > a && rl.delta_MN_maximizer) {
      vchain.push_back(*rl.delta_MN_maximizer);
      ++k;
      continue;
    }
    GapReport r = gap_report(M, NV, budget, seed + 70 + k);
    if (r.delta_MN.lo > a && r.delta_MN_maximizer) {
      vchain.push_back(*r.delta_MN_maximizer);
      ++k;
    } else {
      break;
    }
  }
  res.k = k;
  res.V_k = span_of(X, vchain, M.rank_tol());
  res.constants["k"] = k;
  double dk = delta_i(k);
  res.constants["delta_k"] = dk;
  double ak = coef_a(a, k);
  res.constants["a_k"] = ak;

  Subspace NV = k == 0 ? N : sum(N, res.V_k);
  Subspace LV = k == 0 ? L : sum(L, res.V_k);

  // Step 3: pair the remaining directions of M with nearby vectors of N + V_k.
  Interval dNVM = gap_delta(NV, M, budget, seed + 90);
  double eps = 1e-6 * std::max(gap_delta(M, NV, budget, seed + 91).hi, 1e-9);
  double delta_eps = gap_delta(M, NV, budget, seed + 92).hi + eps;
  res.constants["epsilon"] = eps;
  v.set("delta(N+V,M)", dNVM);

  std::vector<Vec> uchain, wchain;
  for (int j = 0; j < n - k; ++j) {
    Subspace base = sum(LV, span_of(X, uchain, M.rank_tol()));
    GapReport r = gap_report(M, base, budget, seed + 140 + j);
    if (!r.delta_MN_maximizer) {
      v.notes.push_back("witness search exhausted at u_" + std::to_string(j + 1));
      break;
    }
    if (!(r.delta_MN.lo > kB))
      v.notes.push_back("u_" + std::to_string(j + 1) +
                        " not certified beyond b; continuing with best candidate");
    Vec u = *r.delta_MN_maximizer;
    uchain.push_back(u);
    wchain.push_back(dist_to_subspace_detail(u, NV).nearest);
  }
  res.U_nk = span_of(X, uchain, M.rank_tol());
  bool ok = true;
  try {
    res.W_nk = span_of(X, wchain, M.rank_tol());
  } catch (const InputError&) {
    v.notes.push_back("W chain lost rank");
    res.W_nk = Subspace::zero(X, M.rank_tol());
    ok = false;
  }

  v.hypothesis_ok = gate_ok;
  v.conclusion_checked = true;

  // Dimension and direct-sum conclusions, exact integers.
  if (intersect(N, res.V_k).dim() != 0) {
    ok = false;
    v.notes.push_back("N cap V_k is nontrivial");
  }
  Subspace assembled = sum(sum(L, res.V_k), res.U_nk);
  if (assembled.dim() != L.dim() + n || !is_subspace_of(assembled, M) ||
      !is_subspace_of(M, assembled)) {
    ok = false;
    v.notes.push_back("M = L + V_k + U direct-sum decomposition fails");
  }
  if (!res.W_nk.is_zero() && intersect(sum(L, res.V_k), res.W_nk).dim() != 0) {
    ok = false;
    v.notes.push_back("(L + V_k) cap W is nontrivial");
  }

  // Displayed inequalities; a violation is recorded only when certified.
  if (k >= 1) {
    Interval gVN = gap_gamma(res.V_k, N, budget, seed + 201);
    v.set("gamma(V_k,N)", gVN);
    if (gVN.hi < ak * (1.0 - 1e-10)) {
      ok = false;
      v.notes.push_back("gamma(V_k,N) certifiably below a_k");
    }
  }
  Interval dMNV = gap_delta(M, NV, budget, seed + 202);
  v.set("delta(M,N+V_k)", dMNV);
  if (dMNV.lo > a * (1.0 + 1e-10)) {
    ok = false;
    v.notes.push_back("delta(M,N+V_k) certifiably above a");
  }
  if (dNVM.lo > dk * (1.0 + 1e-10) + 1e-12) {
    ok = false;
    v.notes.push_back("delta(N+V_k,M) certifiably above delta_k");
  }

  if (k >= 1 && dLN.hi < ak) {
    Interval gVL = gap_gamma(res.V_k, L, budget, seed + 203);
    v.set("gamma(V_k,L)", gVL);
    double blo = (ak - dLN.hi) / (1.0 + dLN.hi);
    if (gVL.hi < blo * (1.0 - 1e-10)) {
      ok = false;
      v.notes.push_back("gamma(V_k,L) certifiably below (a_k-delta)/(1+delta)");
    }
    Interval dLVNV = gap_delta(LV, NV, budget, seed + 204);
    v.set("delta(L+V_k,N+V_k)", dLVNV);
    double bhi = ak * dLN.hi / (ak - dLN.hi);
    if (dLVNV.lo > bhi * (1.0 + 1e-10) + 1e-12) {
      ok = false;
      v.notes.push_back("delta(L+V_k,N+V_k) certifiably above a_k delta/(a_k-delta)");
    }
  } else if (k >= 1) {
    v.notes.push_back("part-b gate delta(L,N) < a_k not certified; skipped");
  }

  if (n - k > 0) {
    double denom = std::pow(a - dk, n - k) * (1.0 - dk);
    double ck = (a > dk && dk < 1.0)
                    ? (n - k) * std::pow(a + 1.0, n - k - 1) * (1.0 + dk) * dk / denom
                    : kInf;
    res.constants["c_k"] = ck;
    if (ck < 1.0) {
      double gbound = std::pow(a - dk, n - k) /
                      ((n - k) * std::pow(a + 1.0, n - k - 1) * (1.0 + dk));
      Interval gULV = gap_gamma(res.U_nk, LV, budget, seed + 205);
      v.set("gamma(U,L+V_k)", gULV);
      if (gULV.hi < gbound * (1.0 - 1e-10)) {
        ok = false;
        v.notes.push_back("gamma(U,L+V_k) certifiably below its bound");
      }
      if (!res.W_nk.is_zero()) {
        Interval dUW = gap_delta_hat(res.U_nk, res.W_nk, budget, seed + 206);
        v.set("delta_hat(U,W)", dUW);
        if (dUW.lo > ck / (1.0 - ck) * (1.0 + 1e-10) + 1e-12) {
          ok = false;
          v.notes.push_back("delta_hat(U,W) certifiably above c_k/(1-c_k)");
        }
      }
    } else {
      v.notes.push_back("part-c gate c_k < 1 not satisfied; skipped");
    }
    for (size_t j = 0; j < uchain.size(); ++j) {
      if (X.norm(Vec(uchain[j] - wchain[j])) > delta_eps * (1.0 + 1e-8) + 1e-12) {
        ok = false;
        v.notes.push_back("||u_j - w_j|| exceeds delta_eps at j=" + std::to_string(j + 1));
      }
    }
  }

  v.conclusion_ok = ok;
  return res;
}

}  // namespace gapcert
