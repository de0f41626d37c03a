#include "gapcert/tetrad.hpp"

#include "gapcert/sampling.hpp"

#include <cmath>

namespace gapcert {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// Hypothesis gate of the finite-extension statement, direction (a):
///   (1 + delta(B', B)) (1 + delta(S, S') / gamma(S, V)) < 2
/// with V a complement of S inside B.  Conservative sides throughout.
bool ext_gate_a(const Subspace& S, const Subspace& B, const Subspace& Sp,
                const Subspace& Bp, const std::string& tag, Verdict& v, int budget,
                uint64_t seed) {
  Subspace V = complement_within(B, S);
  Interval dBpB = gap_delta(Bp, B, budget, seed);
  Interval dSSp = gap_delta(S, Sp, budget, seed + 11);
  Interval gSV = gap_gamma(S, V, budget, seed + 23);
  v.set(tag + ".delta(B',B)", dBpB);
  v.set(tag + ".delta(S,S')", dSSp);
  v.set(tag + ".gamma(S,V)", gSV);
  if (!(gSV.lo > 0.0)) {
    v.notes.push_back(tag + ": gamma(S,V) lower bound is 0; widen budget");
    return false;
  }
  double gate = (1.0 + dBpB.hi) * (1.0 + dSSp.hi / gSV.lo);
  v.set(tag + ".gate_a", Interval{gate, gate, dBpB.method});
  if (gate < 2.0) return true;
  double opt = (1.0 + dBpB.lo) * (1.0 + dSSp.lo / gSV.hi);
  if (opt < 2.0)
    v.notes.push_back(tag + ": gate indeterminate (" + fmt(opt) + " .. " + fmt(gate) +
                      "); widen budget");
  return false;
}

/// Direction (b): delta(S', S) < gamma(V, S) and
///   (1 + (1+gamma(V,S)) delta(S',S) / (gamma(V,S) - delta(S',S))) (1 + delta(B, B')) < 2.
bool ext_gate_b(const Subspace& S, const Subspace& B, const Subspace& Sp,
                const Subspace& Bp, const std::string& tag, Verdict& v, int budget,
                uint64_t seed) {
  Subspace V = complement_within(B, S);
  Interval dSpS = gap_delta(Sp, S, budget, seed + 5);
  Interval dBBp = gap_delta(B, Bp, budget, seed + 7);
  Interval gVS = gap_gamma(V, S, budget, seed + 13);
  v.set(tag + ".delta(S',S)", dSpS);
  v.set(tag + ".delta(B,B')", dBBp);
  v.set(tag + ".gamma(V,S)", gVS);
  if (!(dSpS.hi < gVS.lo)) {
    v.notes.push_back(tag + ": delta(S',S) not certified below gamma(V,S)");
    return false;
  }
  double gate = (1.0 + (1.0 + gVS.hi) * dSpS.hi / (gVS.lo - dSpS.hi)) * (1.0 + dBBp.hi);
  v.set(tag + ".gate_b", Interval{gate, gate, dSpS.method});
  if (gate < 2.0) return true;
  double opt = (1.0 + (1.0 + gVS.lo) * dSpS.lo / (gVS.hi - dSpS.lo)) * (1.0 + dBBp.lo);
  if (opt < 2.0)
    v.notes.push_back(tag + ": gate indeterminate (" + fmt(opt) + " .. " + fmt(gate) +
                      "); widen budget");
  return false;
}

Subspace cap_of(const Tetrad& t) { return intersect(t.M, t.N); }

/// Dual-side nested pair realizing the sum deficit:
///   dim Y2/(M+N) = dim (M+N)^perp-quotient in the dual.
std::pair<Subspace, Subspace> dual_sum_pair(const Tetrad& t) {
  Subspace S = annihilator(t.Y2);
  Subspace B = intersect(annihilator(t.M), annihilator(t.N));
  return {S, B};
}

}  // namespace

Tetrad::Tetrad(Subspace y1, Subspace m, Subspace n, Subspace y2)
    : Y1(std::move(y1)), M(std::move(m)), N(std::move(n)), Y2(std::move(y2)) {
  if (M.space() != N.space() || M.space() != Y1.space() || M.space() != Y2.space())
    throw ShapeError("tetrad members live in different spaces");
  Subspace cap = intersect(M, N);
  Subspace sm = sum(M, N);
  cap_excess = quotient_dim(cap, Y1);
  sum_deficit = quotient_dim(Y2, sm);
  index = cap_excess - sum_deficit;
}

Tetrad Tetrad::of_pair(Subspace m, Subspace n) {
  NormedSpace X = m.space();
  return Tetrad(Subspace::zero(X), std::move(m), std::move(n), Subspace::full(X));
}

PairIndex pair_index(const Subspace& M, const Subspace& N) {
  if (M.space() != N.space()) throw ShapeError("subspaces live in different spaces");
  PairIndex p;
  p.dim_cap = intersect(M, N).dim();
  p.codim_sum = M.ambient_dim() - sum(M, N).dim();
  p.index = p.dim_cap - p.codim_sum;
  return p;
}

int tetrad_index(const Tetrad& t) { return t.index; }

Verdict finite_diff_index_check(const Subspace& M, const Subspace& Mp,
                                const Subspace& N) {
  Verdict v;
  int n = quotient_dim(Mp, M);
  PairIndex base = pair_index(M, N);
  PairIndex ext = pair_index(Mp, N);
  v.set("n", static_cast<double>(n));
  v.set("index(M,N)", static_cast<double>(base.index));
  v.set("index(M',N)", static_cast<double>(ext.index));
  v.hypothesis_ok = true;
  v.conclusion_checked = true;
  v.conclusion_ok = (ext.index == base.index + n);
  return v;
}

TetradVariant parse_tetrad_variant(const std::string& name, int* m_out) {
  std::string base = name;
  int m = 0;
  auto par = name.find('(');
  if (par != std::string::npos) {
    base = name.substr(0, par);
    m = std::atoi(name.c_str() + par + 1);
  }
  if (m_out) *m_out = m;
  if (base == "1.1a") return TetradVariant::V11a;
  if (base == "1.1b") return TetradVariant::V11b;
  if (base == "1.2a") return TetradVariant::V12a;
  if (base == "1.2b") return TetradVariant::V12b;
  if (base == "1.2c") return TetradVariant::V12c;
  if (base == "1.2d") return TetradVariant::V12d;
  if (base == "1.2e") return TetradVariant::V12e;
  if (base == "finite-ext-a") return TetradVariant::FiniteExtA;
  if (base == "finite-ext-b") return TetradVariant::FiniteExtB;
  throw InputError("unknown stability variant: " + name);
}

std::string to_string(TetradVariant v) {
  switch (v) {
    case TetradVariant::V11a: return "1.1a";
    case TetradVariant::V11b: return "1.1b";
    case TetradVariant::V12a: return "1.2a";
    case TetradVariant::V12b: return "1.2b";
    case TetradVariant::V12c: return "1.2c";
    case TetradVariant::V12d: return "1.2d";
    case TetradVariant::V12e: return "1.2e";
    case TetradVariant::FiniteExtA: return "finite-ext-a";
    case TetradVariant::FiniteExtB: return "finite-ext-b";
  }
  return "?";
}

Verdict verify_tetrad_stability(const Tetrad& t, const Tetrad& tp, TetradVariant variant,
                                int m, int budget, uint64_t seed) {
  Verdict v;
  v.set("index", static_cast<double>(t.index));
  v.set("index'", static_cast<double>(tp.index));

  auto cap_a = [&] {
    return ext_gate_a(t.Y1, cap_of(t), tp.Y1, cap_of(tp), "cap", v, budget, seed);
  };
  auto cap_b = [&] {
    return ext_gate_b(t.Y1, cap_of(t), tp.Y1, cap_of(tp), "cap", v, budget, seed + 100);
  };
  auto sum_a = [&] {
    auto [S, B] = dual_sum_pair(t);
    auto [Sp, Bp] = dual_sum_pair(tp);
    return ext_gate_a(S, B, Sp, Bp, "sum", v, budget, seed + 200);
  };
  auto sum_b = [&] {
    auto [S, B] = dual_sum_pair(t);
    auto [Sp, Bp] = dual_sum_pair(tp);
    return ext_gate_b(S, B, Sp, Bp, "sum", v, budget, seed + 300);
  };

  bool ok = true;
  bool checked = false;
  bool concl = false;
  switch (variant) {
    case TetradVariant::V11a:
      ok = sum_a();
      concl = tp.sum_deficit <= t.sum_deficit;
      break;
    case TetradVariant::V11b:
      ok = cap_a();
      concl = tp.cap_excess <= t.cap_excess;
      break;
    case TetradVariant::V12a:
      ok = sum_a() && cap_b();
      concl = tp.index >= t.index;
      break;
    case TetradVariant::V12b:
      ok = cap_a() && sum_b();
      concl = tp.index <= t.index;
      break;
    case TetradVariant::V12c:
      ok = sum_a() && cap_a() && cap_b() && sum_b();
      concl = tp.index == t.index;
      break;
    case TetradVariant::V12d:
      ok = sum_a() && cap_b() && (t.index >= m);
      concl = tp.index >= m;
      break;
    case TetradVariant::V12e:
      ok = cap_a() && sum_b() && (t.index <= m);
      concl = tp.index <= m;
      break;
    case TetradVariant::FiniteExtA:
    case TetradVariant::FiniteExtB: {
      if (!is_subspace_of(t.M, t.N) || !is_subspace_of(tp.M, tp.N))
        throw ContainmentError("finite-ext variants need M inside N on both sides",
                               Vec::Zero(t.M.ambient_dim()));
      int q = quotient_dim(t.N, t.M);
      int qp = quotient_dim(tp.N, tp.M);
      v.set("dim N/M", static_cast<double>(q));
      v.set("dim N'/M'", static_cast<double>(qp));
      if (variant == TetradVariant::FiniteExtA) {
        ok = ext_gate_a(t.M, t.N, tp.M, tp.N, "ext", v, budget, seed);
        concl = qp <= q;
      } else {
        ok = ext_gate_b(t.M, t.N, tp.M, tp.N, "ext", v, budget, seed);
        concl = qp >= q;
      }
      break;
    }
  }
  v.hypothesis_ok = ok;
  if (ok) {
    checked = true;
  }
  v.conclusion_checked = checked;
  v.conclusion_ok = checked && concl;
  return v;
}

TwoPointWitness two_point_witness(const Subspace& M, const Subspace& N,
                                  const Subspace& L, double a, double b, int budget,
                                  uint64_t seed) {
  if (!is_subspace_of(L, M) || L.dim() >= M.dim())
    throw ContainmentError("two_point_witness: L must be properly contained in M",
                           Vec::Zero(M.ambient_dim()));
  if (!((a + 1.0) * (b + 1.0) < 2.0))
    throw InputError("two_point_witness: (a+1)(b+1) must be < 2");

  const NormedSpace& X = M.space();
  auto [rlo, rhi] = X.euclidean_equivalence();
  auto search = [&](const Subspace& from, const Subspace& target,
                    double threshold) -> std::optional<std::pair<Vec, double>> {
    auto cheap = [&](const Vec& u) { return rlo * dist_euclidean(u, target); };
    Vec best;
    double bv = -1.0;
    for (const auto& u : sphere_samples(from, budget, seed)) {
      double s = cheap(u);
      if (s > bv) { bv = s; best = u; }
    }
    if (best.size() == 0) return std::nullopt;
    best = refine_on_sphere(from, best, cheap, 25, seed);
    Interval d = dist_to_subspace(best, target);
    if (d.lo > threshold) return std::make_pair(best, d.lo);
    return std::nullopt;
  };

  TwoPointWitness w;
  if (auto hit = search(M, N, a)) {
    w.found = true;
    w.in_M = true;
    w.vector = hit->first;
    w.certified_dist = hit->second;
    return w;
  }
  if (auto hit = search(N, L, b)) {
    w.found = true;
    w.in_M = false;
    w.vector = hit->first;
    w.certified_dist = hit->second;
    return w;
  }
  return w;
}

}  // namespace gapcert
