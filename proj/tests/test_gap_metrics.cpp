#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gapcert/gap.hpp"
#include "gapcert/perturb.hpp"
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

TEST_CASE("identical subspaces: delta-hat near 0, gamma 1") {
  TestRng r(1);
  NormedSpace X = NormedSpace::l2(5);
  Subspace M = random_subspace(r, X, 3);
  GapReport g = gap_report(M, M, 500, 1);
  CHECK(g.delta_hat.hi <= 1e-7);
  CHECK(g.gamma_MN.lo == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("rotated line at pi/6: delta = sin(pi/6) = 0.5") {
  NormedSpace X = NormedSpace::l2(2);
  Subspace M(X, rv2(1, 0));
  double th = 3.14159265358979323846 / 6.0;
  Subspace N(X, rv2(std::cos(th), std::sin(th)));
  Interval d = gap_delta(M, N, 500, 1);
  CHECK(d.lo <= 0.5);
  CHECK(d.hi >= 0.5);
  CHECK(d.width() <= 1e-9);
}

TEST_CASE("l1 gap of the diagonal against e1 is 0.5") {
  NormedSpace X = NormedSpace::lp(2, 1.0);
  Subspace M(X, rv2(1, 1));
  Subspace N(X, rv2(1, 0));
  Interval d = gap_delta(M, N, 500, 1);
  CHECK(d.lo >= 0.5 - 1e-6);
  CHECK(d.hi >= 0.5 - 1e-9);
  CHECK(d.lo <= 0.5 + 1e-6);
}

TEST_CASE("l2 exact oracle on hand examples") {
  NormedSpace X = NormedSpace::l2(2);
  Subspace e1(X, rv2(1, 0));
  Subspace e2(X, rv2(0, 1));
  Subspace diag(X, rv2(1, 1));
  CHECK(gap_l2_exact(e1, e2) == doctest::Approx(1.0));
  CHECK(gap_l2_exact(e1, e1) <= 1e-12);
  CHECK(gap_l2_exact(diag, e1) == doctest::Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("zero-subspace conventions") {
  NormedSpace X = NormedSpace::l2(3);
  Subspace Z = Subspace::zero(X);
  Subspace M = Subspace::coordinate(X, {0});
  CHECK(gap_delta(Z, M).hi <= 1e-12);
  CHECK(gap_delta(M, Z).lo >= 1.0 - 1e-12);
  Interval dh = gap_delta_hat(Z, Z);
  CHECK(dh.hi <= 1e-12);
}

TEST_CASE("oracle containment over random l2 pairs") {
  TestRng r(2);
  for (int t = 0; t < 60; ++t) {
    NormedSpace X = NormedSpace::l2(r.pick(2, 6));
    Subspace M = random_subspace(r, X, r.pick(1, X.dim() - 1));
    Subspace N = random_subspace(r, X, r.pick(1, X.dim() - 1));
    double exact = gap_l2_exact(M, N);
    Interval d = gap_delta(M, N, 500, t);
    CHECK(d.lo <= exact + 1e-10);
    CHECK(d.hi >= exact - 1e-10);
    CHECK(d.width() <= 1e-9);
  }
}

TEST_CASE("triangle-type product inequality on random triples") {
  TestRng r(3);
  for (double p : {1.0, 2.0, 3.0, kInf}) {
    NormedSpace X = NormedSpace::lp(4, p);
    for (int t = 0; t < 15; ++t) {
      Subspace M = random_subspace(r, X, 2);
      Subspace N = random_subspace(r, X, 2);
      Subspace L = random_subspace(r, X, 2);
      double lhs = 1.0 + gap_delta(M, L, 400, t).lo;
      double rhs = (1.0 + gap_delta(M, N, 400, t).hi) * (1.0 + gap_delta(N, L, 400, t).hi);
      CHECK(lhs <= rhs + 1e-12);
    }
  }
}

TEST_CASE("dimension rigidity under delta-hat below 1") {
  TestRng r(4);
  NormedSpace X = NormedSpace::l2(5);
  for (int t = 0; t < 30; ++t) {
    int k = r.pick(1, 4);
    Subspace M = random_subspace(r, X, k);
    Subspace N = random_subspace(r, X, r.pick(1, 4));
    Interval dh = gap_delta_hat(M, N, 400, t);
    if (dh.hi < 1.0) CHECK(M.dim() == N.dim());
    if (M.dim() != N.dim()) CHECK(dh.hi >= 1.0 - 1e-9);
  }
}

TEST_CASE("gamma matches the l2 oracle and conventions") {
  TestRng r(5);
  NormedSpace X = NormedSpace::l2(5);
  for (int t = 0; t < 25; ++t) {
    Subspace M = random_subspace(r, X, r.pick(1, 4));
    Subspace N = random_subspace(r, X, r.pick(1, 4));
    double exact = gamma_l2_exact(M, N);
    Interval g = gap_gamma(M, N, 400, t);
    CHECK(g.lo <= exact + 1e-9);
    CHECK(g.hi >= exact - 1e-9);
  }
  Subspace M = Subspace::coordinate(X, {0});
  Subspace N = Subspace::coordinate(X, {0, 1});
  CHECK(gap_gamma(M, N).lo == doctest::Approx(1.0));
}

TEST_CASE("delta vanishes exactly on containment") {
  TestRng r(6);
  NormedSpace X = NormedSpace::lp(5, 3.0);
  Subspace N = random_subspace(r, X, 3);
  Subspace M(X, Mat(N.onb().leftCols(2)));
  CHECK(gap_delta(M, N, 200, 1).hi <= 1e-8);
  Subspace M2 = random_subspace(r, X, 2);
  if (!is_subspace_of(M2, N)) CHECK(gap_delta(M2, N, 200, 1).lo > 1e-6);
}

TEST_CASE("invertible-map distortion bound") {
  TestRng r(7);
  NormedSpace X = NormedSpace::l2(4);
  for (int t = 0; t < 15; ++t) {
    Subspace M = random_subspace(r, X, 2);
    Subspace N = random_subspace(r, X, 2);
    Mat A = Mat::Identity(4, 4) + 0.3 * r.gaussian(4, 4);
    if (!is_invertible(A)) continue;
    Interval cond = condition_number(X, A, 300, t);
    Interval lhs = gap_delta(map_subspace(A, M), map_subspace(A, N), 400, t);
    Interval rhs = gap_delta(M, N, 400, t);
    CHECK(lhs.lo / cond.hi <= rhs.hi + 1e-9);
  }
}

TEST_CASE("small perturbation bound ||A||/(1-||A||)") {
  TestRng r(8);
  NormedSpace X = NormedSpace::l2(4);
  for (int t = 0; t < 15; ++t) {
    Subspace M = random_subspace(r, X, 2);
    Mat A = 0.2 * r.gaussian(4, 4);
    Interval na = op_norm(X, A, 300, t);
    if (na.hi >= 1.0) continue;
    Interval d = gap_delta(map_subspace(Mat(Mat::Identity(4, 4) + A), M), M, 400, t);
    CHECK(d.lo <= na.hi / (1.0 - na.hi) + 1e-9);
  }
}

TEST_CASE("report symmetry and enclosure structure") {
  TestRng r(9);
  NormedSpace X = NormedSpace::lp(4, kInf);
  Subspace M = random_subspace(r, X, 2);
  Subspace N = random_subspace(r, X, 2);
  GapReport g = gap_report(M, N, 600, 3, true);
  CHECK(g.delta_hat.hi >= std::max(g.delta_MN.lo, g.delta_NM.lo) - 1e-12);
  CHECK(g.delta_hat.lo <= std::max(g.delta_MN.hi, g.delta_NM.hi) + 1e-12);
  CHECK(g.delta_MN.lo <= g.delta_MN.hi);
  CHECK(g.delta_MN.hi <= 1.0 + 1e-9);
  REQUIRE(g.hausdorff.has_value());
  CHECK(g.hausdorff->hi <= 2.0 + 1e-9);
  GapReport g2 = gap_report(N, M, 600, 3, false);
  // sampled lower bounds may differ slightly between directions
  CHECK(std::abs(g2.delta_hat.lo - g.delta_hat.lo) <= 1e-3);
  CHECK(g2.delta_hat.hi == doctest::Approx(g.delta_hat.hi).epsilon(1e-9));
}
