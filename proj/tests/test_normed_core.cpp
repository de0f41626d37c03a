#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gapcert/dist.hpp"
#include "gapcert/gap.hpp"
#include "helpers.hpp"

using namespace gapcert;
using namespace gapcert::testing;

namespace {

Vec rv2(double a, double b) {
  Vec v(2);
  v << Scalar(a, 0), Scalar(b, 0);
  return v;
}

}  // namespace

TEST_CASE("norm axioms spot check across descriptors") {
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    CHECK(spot_check_norm_axioms(NormedSpace::lp(4, p), 11, 50));
    RealVec w(4);
    w << 0.5, 1.0, 2.0, 3.5;
    CHECK(spot_check_norm_axioms(NormedSpace(4, Field::Complex, NormDesc{p, w}), 12, 50));
  }
}

TEST_CASE("dual norm pairing bound and dual of dual") {
  TestRng r(3);
  for (double p : {1.0, 1.5, 2.0, 4.0, kInf}) {
    NormedSpace X = NormedSpace::lp(3, p);
    NormedSpace Xd = X.dual();
    for (int t = 0; t < 30; ++t) {
      Vec x = r.gvec(3), f = r.gvec(3);
      double pairing = std::abs((f.adjoint() * x)(0, 0));
      CHECK(pairing <= X.dual_norm(f) * X.norm(x) * (1 + 1e-10) + 1e-12);
    }
    // reflexivity up to exponent round-trip rounding
    NormedSpace Xdd = Xd.dual();
    for (int t = 0; t < 10; ++t) {
      Vec x = r.gvec(3);
      CHECK(Xdd.norm(x) == doctest::Approx(X.norm(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("distance to coordinate axis, l2") {
  NormedSpace X = NormedSpace::l2(2);
  Subspace N(X, rv2(1, 0));
  Interval d = dist_to_subspace(rv2(0, 1), N);
  CHECK(d.lo == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d.hi == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("distance in l1: residual (0,1) has norm 1") {
  NormedSpace X = NormedSpace::lp(2, 1.0);
  Subspace N(X, rv2(1, 0));
  Interval d = dist_to_subspace(rv2(1, 1), N);
  CHECK(d.lo == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(d.hi == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("membership gives distance zero") {
  TestRng r(5);
  for (double p : {1.0, 2.0, 3.0, kInf}) {
    NormedSpace X = NormedSpace::lp(4, p);
    Subspace N = random_subspace(r, X, 2);
    Vec u = N.onb() * r.gvec(2);
    Interval d = dist_to_subspace(u, N);
    CHECK(d.lo <= 1e-8);
    CHECK(d.hi <= 1e-7);
  }
}

TEST_CASE("dist lower bound vanishes exactly for members") {
  TestRng r(6);
  NormedSpace X = NormedSpace::lp(5, 3.0);
  Subspace N = random_subspace(r, X, 2);
  Vec inside = N.onb() * r.gvec(2);
  Vec outside = inside + 0.5 * N.euclidean_residual(r.gvec(5)).normalized();
  CHECK(dist_to_subspace(inside, N).lo <= 1e-8);
  CHECK(dist_to_subspace(outside, N).lo > 1e-3);
}

TEST_CASE("shape and input errors") {
  NormedSpace X = NormedSpace::l2(2);
  Subspace N(X, rv2(1, 0));
  Vec bad(3);
  bad << Scalar(1, 0), Scalar(0, 0), Scalar(0, 0);
  CHECK_THROWS_AS(dist_to_subspace(bad, N), ShapeError);
  Vec nan = rv2(std::nan(""), 0);
  CHECK_THROWS_AS(dist_to_subspace(nan, N), InputError);
  CHECK_THROWS_AS(NormedSpace(3, Field::Real, NormDesc{0.5, {}}), InputError);
}

TEST_CASE("intersection of coordinate planes in R3") {
  NormedSpace X = NormedSpace::l2(3);
  Subspace A = Subspace::coordinate(X, {0, 1});
  Subspace B = Subspace::coordinate(X, {1, 2});
  Subspace C = intersect(A, B);
  REQUIRE(C.dim() == 1);
  CHECK(gap_l2_exact(C, Subspace::coordinate(X, {1})) <= 1e-9);
}

TEST_CASE("annihilator of a coordinate axis") {
  NormedSpace X = NormedSpace::l2(3);
  Subspace A = Subspace::coordinate(X, {0});
  Subspace ann = annihilator(A);
  REQUIRE(ann.dim() == 2);
  CHECK(gap_l2_exact(ann, Subspace::coordinate(X.dual(), {1, 2})) <= 1e-9);
}

TEST_CASE("quotient dimension and containment error witness") {
  NormedSpace X = NormedSpace::l2(3);
  Subspace full = Subspace::full(X);
  Subspace e1 = Subspace::coordinate(X, {0});
  CHECK(quotient_dim(full, e1) == 2);
  Subspace e2 = Subspace::coordinate(X, {1});
  try {
    quotient_dim(e1, e2);
    FAIL("expected containment error");
  } catch (const ContainmentError& e) {
    CHECK(e.witness().norm() > 0.5);
  }
}

TEST_CASE("double annihilator recovers the subspace") {
  TestRng r(7);
  for (double p : {1.0, 2.0, 3.0, kInf}) {
    NormedSpace X = NormedSpace::lp(5, p);
    Subspace M = random_subspace(r, X, 2);
    Subspace MM = annihilator(annihilator(M));
    Subspace M_in_bidual(MM.space(), M.basis());
    CHECK(gap_delta_hat(M_in_bidual, MM, 64, 1).hi < 1e-8);
  }
}

TEST_CASE("rank-nullity on random pairs") {
  TestRng r(8);
  NormedSpace X = NormedSpace::l2(6);
  for (int t = 0; t < 40; ++t) {
    Subspace A = random_subspace(r, X, r.pick(0, 5));
    Subspace B = random_subspace(r, X, r.pick(0, 5));
    CHECK(sum(A, B).dim() + intersect(A, B).dim() == A.dim() + B.dim());
  }
}

TEST_CASE("l2 distance agrees with orthogonal projection") {
  TestRng r(9);
  NormedSpace X = NormedSpace::l2(6);
  for (int t = 0; t < 25; ++t) {
    Subspace N = random_subspace(r, X, r.pick(1, 5));
    Vec u = r.gvec(6);
    double proj = N.euclidean_residual(u).norm();
    Interval d = dist_to_subspace(u, N);
    CHECK(std::abs(d.mid() - proj) <= 1e-10 * (1.0 + proj));
  }
}

TEST_CASE("weighted l2 distance via the scaling transform") {
  TestRng r(10);
  RealVec w(4);
  w << 0.25, 1.0, 4.0, 9.0;
  NormedSpace X(4, Field::Real, NormDesc{2.0, w});
  Subspace N = random_subspace(r, X, 2);
  Vec u = r.gvec(4);
  Interval d = dist_to_subspace(u, N);
  // brute-force check against dense minimization over coefficients
  Mat B = N.onb();
  double best = kInf;
  TestRng rr(11);
  for (int t = 0; t < 20000; ++t)
    best = std::min(best, X.norm(Vec(u - B * rr.gvec(2))));
  CHECK(d.lo <= best + 1e-9);
  CHECK(d.hi <= best + 0.05 * (1 + best));
}

TEST_CASE("norming functional certifies the norm") {
  TestRng r(12);
  for (double p : {1.0, 1.7, 2.0, 5.0, kInf}) {
    NormedSpace X = NormedSpace::lp(4, p);
    for (int t = 0; t < 20; ++t) {
      Vec x = r.gvec(4);
      Vec f = norming_functional(X, x);
      double fx = std::abs((f.adjoint() * x)(0, 0));
      CHECK(X.dual_norm(f) == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(fx == doctest::Approx(X.norm(x)).epsilon(1e-8));
    }
  }
}
