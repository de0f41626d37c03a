#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gapcert/morse.hpp"
#include "gapcert/perturb.hpp"
#include "helpers.hpp"

using namespace gapcert;
using namespace gapcert::testing;

namespace {

SymmetricPair diag_form(const NormedSpace& X, const Subspace& V,
                        std::initializer_list<double> d) {
  Mat G = Mat::Zero(V.dim(), V.dim());
  int i = 0;
  for (double v : d) G(i, i) = v, ++i;
  return SymmetricPair(V, G);
}

}  // namespace

TEST_CASE("signature of diag(1, -1, 0)") {
  NormedSpace X = NormedSpace::l2(3);
  SymmetricPair Q = diag_form(X, Subspace::full(X), {1.0, -1.0, 0.0});
  MorseIndices m = morse_indices(Q);
  CHECK(m.m_plus == 1);
  CHECK(m.m_minus == 1);
  CHECK(m.m_zero == 1);
}

TEST_CASE("Sylvester invariance under congruence") {
  TestRng r(1);
  for (int t = 0; t < 25; ++t) {
    NormedSpace X = NormedSpace::l2(5);
    Subspace V = Subspace::full(X);
    Mat G = r.gaussian(5, 5);
    G = 0.5 * (G + G.adjoint().eval());
    MorseIndices a = morse_indices(SymmetricPair(V, G));
    Mat T = Mat::Identity(5, 5) + 0.4 * r.gaussian(5, 5);
    if (!is_invertible(T)) continue;
    MorseIndices b = morse_indices(SymmetricPair(V, Mat(T.adjoint() * G * T)));
    CHECK(a.m_plus == b.m_plus);
    CHECK(a.m_minus == b.m_minus);
    CHECK(a.m_zero == b.m_zero);
  }
}

TEST_CASE("non-Hermitian gram is rejected") {
  NormedSpace X = NormedSpace::l2(2);
  Mat G(2, 2);
  G << Scalar(1, 0), Scalar(2, 0), Scalar(0, 0), Scalar(1, 0);
  CHECK_THROWS_AS(SymmetricPair(Subspace::full(X), G), InputError);
}

TEST_CASE("form norm and gamma for a definite diagonal form") {
  NormedSpace X = NormedSpace::l2(3);
  SymmetricPair Q = diag_form(X, Subspace::full(X), {3.0, 0.5, 2.0});
  auto [n, g] = form_metrics(Q);
  CHECK(n.lo <= 3.0);
  CHECK(n.hi >= 3.0);
  CHECK(g.lo <= 0.5);
  CHECK(g.hi >= 0.5);
}

TEST_CASE("gamma requested for an indefinite form throws") {
  NormedSpace X = NormedSpace::l2(2);
  SymmetricPair Q = diag_form(X, Subspace::full(X), {1.0, -1.0});
  CHECK_THROWS_AS(form_metrics(Q), SignatureError);
}

TEST_CASE("form annihilator and kernel") {
  NormedSpace X = NormedSpace::l2(3);
  SymmetricPair Q = diag_form(X, Subspace::full(X), {1.0, -1.0, 0.0});
  CHECK(form_kernel(Q).dim() == 1);
  Subspace e1 = Subspace::coordinate(X, {0});
  Subspace ann = form_annihilator(Q, e1);
  CHECK(ann.dim() == 2);
  CHECK(is_subspace_of(Subspace::coordinate(X, {1, 2}), ann));
}

TEST_CASE("hyperbolic plane reduces to zero over an isotropic line") {
  NormedSpace X = NormedSpace::l2(2);
  Mat G(2, 2);
  G << Scalar(0, 0), Scalar(1, 0), Scalar(1, 0), Scalar(0, 0);
  SymmetricPair Q(Subspace::full(X), G);
  Mat iso(2, 1);
  iso << Scalar(1, 0), Scalar(0, 0);
  SymmetricPair red = reduced_form(Q, Subspace(X, iso));
  CHECK(red.V().dim() == 0);
}

TEST_CASE("reduced form rejects non-isotropic eps") {
  NormedSpace X = NormedSpace::l2(2);
  SymmetricPair Q = diag_form(X, Subspace::full(X), {1.0, 1.0});
  CHECK_THROWS_AS(reduced_form(Q, Subspace::coordinate(X, {0})), ContainmentError);
}

TEST_CASE("definite decomposition splits the space") {
  NormedSpace X = NormedSpace::l2(3);
  SymmetricPair Q = diag_form(X, Subspace::full(X), {2.0, -1.0, 3.0});
  FormDecomposition d = decompose_definite(Q, Subspace::coordinate(X, {0}));
  CHECK(d.checks.conclusion_ok);
  CHECK(d.alphaQ.dim() == 2);
}

TEST_CASE("maximal definite part by eigenvalue selection") {
  NormedSpace X = NormedSpace::l2(4);
  SymmetricPair Q = diag_form(X, Subspace::full(X), {2.0, -1.0, 0.0, 0.7});
  MaximalDefinite mp = maximal_definite(Q, 1);
  CHECK(mp.alpha_max.dim() == 2);
  CHECK(mp.complement_semidefinite);
  MaximalDefinite mm = maximal_definite(Q, -1);
  CHECK(mm.alpha_max.dim() == 1);
}

TEST_CASE("c-gap of a form with itself vanishes for large c") {
  TestRng r(2);
  NormedSpace X = NormedSpace::l2(4);
  Subspace V = random_subspace(r, X, 3);
  Mat G = r.gaussian(3, 3);
  G = 0.5 * (G + G.adjoint().eval());
  SymmetricPair Q(V, G);
  double nq = form_norm(Q).hi;
  CGapReport g = c_gap(Q, Q, 1.1 * nq, 500, 1);
  CHECK(g.value.hi <= 1e-9);
}

TEST_CASE("c-gap upper bound is monotone nonincreasing in c") {
  TestRng r(3);
  NormedSpace X = NormedSpace::l2(4);
  Subspace V = random_subspace(r, X, 2);
  Subspace W = random_subspace(r, X, 2);
  Mat GQ = r.gaussian(2, 2), GR = r.gaussian(2, 2);
  GQ = 0.5 * (GQ + GQ.adjoint().eval());
  GR = 0.5 * (GR + GR.adjoint().eval());
  SymmetricPair Q(V, GQ), R(W, GR);
  double prev = kInf;
  for (double c : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    CGapReport g = c_gap(Q, R, c, 400, 1);
    CHECK(g.value.hi <= prev + 1e-12);
    CHECK(g.value.lo <= g.value.hi + 1e-15);
    prev = g.value.hi;
  }
}

TEST_CASE("c-gap sampled lower bound stays below the certified bound") {
  TestRng r(4);
  for (int t = 0; t < 10; ++t) {
    NormedSpace X = NormedSpace::lp(4, t % 2 ? 3.0 : 2.0);
    Subspace V = random_subspace(r, X, 2);
    Subspace W = random_subspace(r, X, 2);
    Mat GQ = r.gaussian(2, 2), GR = r.gaussian(2, 2);
    GQ = 0.5 * (GQ + GQ.adjoint().eval());
    GR = 0.5 * (GR + GR.adjoint().eval());
    CGapReport g = c_gap(SymmetricPair(V, GQ), SymmetricPair(W, GR), 0.3, 400, t);
    CHECK(g.value.lo <= g.value.hi);
  }
}

TEST_CASE("annihilator certificate on a rank-one perturbation") {
  NormedSpace X = NormedSpace::l2(2);
  Subspace V = Subspace::full(X);
  SymmetricPair Q = diag_form(X, V, {1.0, -1.0});
  Mat GR = Q.gram() + 1e-4 * Mat::Identity(2, 2);
  SymmetricPair R(V, GR);
  Subspace alpha = Subspace::coordinate(X, {0});
  double c = 1.1 * form_norm(Q).hi;
  Verdict v = annihilator_gap_certificate(Q, alpha, R, alpha, c, 1, 800, 1);
  CHECK(v.hypothesis_ok);
  CHECK(v.conclusion_checked);
  CHECK(!v.alarm());
}

TEST_CASE("annihilator certificate gate fails for distant forms") {
  NormedSpace X = NormedSpace::l2(2);
  Subspace V = Subspace::full(X);
  SymmetricPair Q = diag_form(X, V, {1.0, -1.0});
  SymmetricPair R = diag_form(X, V, {-1.0, 1.0});
  Subspace alpha = Subspace::coordinate(X, {0});
  Subspace beta = Subspace::coordinate(X, {1});
  Verdict v = annihilator_gap_certificate(Q, alpha, R, beta, 0.0, 1, 400, 1);
  CHECK(!v.hypothesis_ok);
}

TEST_CASE("definite-case stability certificate") {
  NormedSpace X = NormedSpace::l2(3);
  Subspace V = Subspace::full(X);
  SymmetricPair Q = diag_form(X, V, {1.0, 2.0, 0.0});
  // perturb the nondegenerate block only, so the radical survives
  Mat E = Mat::Zero(3, 3);
  E(0, 0) = 1e-6;
  E(1, 1) = 2e-6;
  SymmetricPair R(V, Mat(Q.gram() + E));
  double c = 1.1 * form_norm(Q).hi;
  Verdict v = verify_morse_stability(Q, form_kernel(Q), R, form_kernel(R), 1, c,
                                     MorseVariant::PropDefinite, 800, 1);
  CHECK(v.hypothesis_ok);
  CHECK(v.conclusion_checked);
  CHECK(!v.alarm());
}

TEST_CASE("theorem-style certificate on a small perturbation") {
  TestRng r(5);
  NormedSpace X = NormedSpace::l2(3);
  Subspace V = Subspace::full(X);
  SymmetricPair Q = diag_form(X, V, {1.5, -1.0, 0.8});
  Mat E = 1e-5 * r.gaussian(3, 3);
  SymmetricPair R(V, Mat(Q.gram() + 0.5 * (E + E.adjoint().eval())));
  double c = 1.2 * form_norm(Q).hi;
  Verdict v = verify_morse_stability(Q, Subspace::zero(X), R, Subspace::zero(X), 1, c,
                                     MorseVariant::Thm16, 800, 2);
  if (v.hypothesis_ok) {
    CHECK(v.conclusion_ok);
    CHECK(!v.alarm());
  }
  Verdict p = verify_morse_stability(Q, Subspace::zero(X), R, Subspace::zero(X), 1, c,
                                     MorseVariant::Prop17, 800, 2);
  if (p.hypothesis_ok) {
    MorseIndices mR = morse_indices(R);
    CHECK(mR.m_plus >= morse_indices(Q).m_plus);
    CHECK(!p.alarm());
  }
}

TEST_CASE("scaled and restricted forms agree with direct evaluation") {
  TestRng r(6);
  NormedSpace X = NormedSpace::l2(4);
  Subspace V = random_subspace(r, X, 3);
  Mat G = r.gaussian(3, 3);
  G = 0.5 * (G + G.adjoint().eval());
  SymmetricPair Q(V, G);
  Subspace S(X, Mat(V.onb().leftCols(2)));
  SymmetricPair Qs = Q.restricted(S);
  for (int t = 0; t < 10; ++t) {
    Vec x = S.onb() * r.gvec(2), y = S.onb() * r.gvec(2);
    CHECK(std::abs(Q.eval(x, y) - Qs.eval(x, y)) <= 1e-9);
    CHECK(std::abs(Q.scaled(-2.0).eval(x, y) + 2.0 * Q.eval(x, y)) <= 1e-9);
  }
}
