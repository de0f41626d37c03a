#include "gapcert/generate.hpp"

#include "gapcert/morse.hpp"
#include "gapcert/reldim.hpp"
#include "gapcert/tetrad.hpp"

#include <random>

namespace gapcert {

namespace {

struct Rng {
  std::mt19937_64 g;
  explicit Rng(uint64_t seed) : g(seed) {}
  double uniform() { return (g() >> 11) * 0x1.0p-53; }
  double gauss() {
    // Box-Muller on raw uniforms keeps the stream platform-stable.
    double u = std::max(uniform(), 1e-300), v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
  }
  int pick(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(uniform() * (hi - lo + 1)) % (hi - lo + 1);
  }
  Mat gaussian(int rows, int cols) {
    Mat A(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) A(i, j) = Scalar(gauss(), 0.0);
    return A;
  }
};

Subspace random_subspace(Rng& r, const NormedSpace& X, int k) {
  if (k == 0) return Subspace::zero(X);
  return Subspace(X, r.gaussian(X.dim(), k));
}

/// Random subspace of S of dimension k, by random combinations of its basis.
Subspace random_inside(Rng& r, const Subspace& S, int k) {
  if (k == 0) return Subspace::zero(S.space());
  return Subspace(S.space(), Mat(S.onb() * r.gaussian(S.dim(), k)));
}

Json pair_instance(Rng& r, int n) {
  NormedSpace X = NormedSpace::l2(n);
  ProblemFile p;
  p.space = X;
  Subspace M = random_subspace(r, X, r.pick(1, n - 1));
  Subspace N = random_subspace(r, X, r.pick(1, n - 1));
  p.subspaces.emplace("M", M);
  p.subspaces.emplace("N", N);
  Json j = problem_to_json(p);
  PairIndex pi = pair_index(M, N);
  j["manifest"] = Json{{"dim_M", M.dim()},
                       {"dim_N", N.dim()},
                       {"dim_cap", pi.dim_cap},
                       {"codim_sum", pi.codim_sum},
                       {"index", pi.index}};
  return j;
}

Tetrad random_tetrad(Rng& r, const NormedSpace& X) {
  const int n = X.dim();
  Subspace M = random_subspace(r, X, r.pick(1, n - 1));
  Subspace N = random_subspace(r, X, r.pick(1, n - 1));
  Subspace cap = intersect(M, N);
  Subspace msum = sum(M, N);
  Subspace Y1 = random_inside(r, cap, cap.dim() > 0 ? r.pick(0, cap.dim()) : 0);
  int room = n - msum.dim();
  int extra = room > 0 ? r.pick(0, room) : 0;
  Subspace Y2 = msum;
  if (extra > 0) {
    Subspace rest = complement_within(Subspace::full(X), msum);
    Y2 = sum(msum, random_inside(r, rest, extra));
  }
  return Tetrad(Y1, M, N, Y2);
}

Json tetrad_instance(Rng& r, int n) {
  NormedSpace X = NormedSpace::l2(n);
  Tetrad t = random_tetrad(r, X);
  ProblemFile p;
  p.space = X;
  p.subspaces.emplace("Y1", t.Y1);
  p.subspaces.emplace("M", t.M);
  p.subspaces.emplace("N", t.N);
  p.subspaces.emplace("Y2", t.Y2);
  Json j = problem_to_json(p);
  j["manifest"] = Json{{"cap_excess", t.cap_excess},
                       {"sum_deficit", t.sum_deficit},
                       {"index", t.index}};
  return j;
}

Json reldim_instance(Rng& r, int n) {
  NormedSpace X = NormedSpace::l2(n);
  Subspace M = random_subspace(r, X, r.pick(1, n - 1));
  Subspace N = random_subspace(r, X, r.pick(1, n - 1));
  PerturbationOperator K = canonical_perturbation(M, N, 64, 1);
  RelDimReport rep = relative_dim(M, N, K);
  ProblemFile p;
  p.space = X;
  p.subspaces.emplace("M", M);
  p.subspaces.emplace("N", N);
  Json j = problem_to_json(p);
  j["K"] = matrix_to_json(K.K, X.field());
  j["manifest"] = Json{{"value", rep.value},
                       {"kernel_dim", rep.kernel_dim},
                       {"cokernel_dim", rep.cokernel_dim},
                       {"dim_difference", M.dim() - N.dim()}};
  return j;
}

Json morse_instance(Rng& r, int n) {
  NormedSpace X = NormedSpace::l2(n);
  int k = r.pick(1, n);
  Subspace V = random_subspace(r, X, k);
  Mat G = r.gaussian(k, k);
  G = 0.5 * (G + G.adjoint().eval());
  SymmetricPair Q(V, G);
  MorseIndices m = morse_indices(Q);
  ProblemFile p;
  p.space = X;
  p.subspaces.emplace("V", V);
  Json j = problem_to_json(p);
  j["form"] = form_to_json(Q, "V");
  // Instances pair with c at or above ||Q|| so the self c-gap vanishes.
  j["c"] = 1.1 * form_norm(Q).hi;
  j["manifest"] =
      Json{{"m_plus", m.m_plus}, {"m_minus", m.m_minus}, {"m_zero", m.m_zero}};
  return j;
}

Json path_instance(Rng& r, int n) {
  NormedSpace X = NormedSpace::l2(n);
  Tetrad t = random_tetrad(r, X);
  ProblemFile p;
  p.space = X;
  Json j = problem_to_json(p);
  Json gen;
  if (r.uniform() < 0.5) {
    gen = Json{{"kind", "rotation"}, {"i", r.pick(0, n - 2)}, {"rate", 0.5 + r.uniform()}};
    gen["j"] = gen["i"].get<int>() + 1;
  } else {
    Json part1{{"kind", "rotation"}, {"i", 0}, {"j", n - 1}, {"rate", r.uniform()}};
    Json part2{{"kind", "shear"}, {"i", r.pick(0, n - 2)}, {"rate", 0.5 * r.uniform()}};
    part2["j"] = part2["i"].get<int>() + 1;
    gen = Json{{"kind", "composite"}, {"parts", Json::array({part1, part2})}};
  }
  j["generator"] = gen;
  j["steps"] = 40;
  Json tj;
  ProblemFile tp;
  tp.space = X;
  tp.subspaces.emplace("Y1", t.Y1);
  tp.subspaces.emplace("M", t.M);
  tp.subspaces.emplace("N", t.N);
  tp.subspaces.emplace("Y2", t.Y2);
  Json subs = problem_to_json(tp)["subspaces"];
  tj["Y1"] = subs["Y1"];
  tj["M"] = subs["M"];
  tj["N"] = subs["N"];
  tj["Y2"] = subs["Y2"];
  j["tetrad"] = tj;
  j["manifest"] = Json{{"index", t.index}};
  return j;
}

}  // namespace

Json generate_instance(const std::string& kind, uint64_t seed, int size) {
  if (size < 2 || size > 64) throw InputError("generate: size must be in [2, 64]");
  Rng r(seed * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL);
  Json j;
  if (kind == "pair")
    j = pair_instance(r, size);
  else if (kind == "tetrad")
    j = tetrad_instance(r, size);
  else if (kind == "reldim")
    j = reldim_instance(r, size);
  else if (kind == "morse")
    j = morse_instance(r, size);
  else if (kind == "path")
    j = path_instance(r, size);
  else
    throw InputError("generate: unknown kind " + kind);
  j["kind"] = kind;
  j["seed"] = seed;
  return j;
}

}  // namespace gapcert
