#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gapcert/family.hpp"
#include "helpers.hpp"

using namespace gapcert;
using namespace gapcert::testing;

namespace {

Tetrad r4_example(const NormedSpace& X) {
  return Tetrad(Subspace::zero(X), Subspace::coordinate(X, {0, 1}),
                Subspace::coordinate(X, {1, 2}), Subspace::coordinate(X, {0, 1, 2}));
}

}  // namespace

TEST_CASE("frozen family has a constant trace") {
  NormedSpace X = NormedSpace::l2(4);
  PathSpec p;
  p.generator.kind = GeneratorSpec::Kind::Rotation;
  p.generator.rate = 0.0;
  p.steps = 10;
  p.tetrad_base = r4_example(X);
  FamilyTrace tr = walk_family(p, WalkKind::TetradIndex);
  CHECK(tr.constant);
  for (int v : tr.values) CHECK(v == 1);
  for (double inc : tr.dhat_increments) CHECK(inc <= 1e-8);
}

TEST_CASE("quarter rotation of the R4 tetrad keeps index 1") {
  NormedSpace X = NormedSpace::l2(4);
  PathSpec p;
  p.generator.kind = GeneratorSpec::Kind::Rotation;
  p.generator.i = 0;
  p.generator.j = 2;
  p.generator.rate = 3.14159265358979323846 / 2.0;
  p.steps = 100;
  p.tetrad_base = r4_example(X);
  FamilyTrace tr = walk_family(p, WalkKind::TetradIndex);
  CHECK(tr.constant);
  REQUIRE(tr.values.size() == 101);
  for (int v : tr.values) CHECK(v == 1);
}

TEST_CASE("relative dimension along a shear path") {
  NormedSpace X = NormedSpace::l2(4);
  PathSpec p;
  p.generator.kind = GeneratorSpec::Kind::Shear;
  p.generator.i = 0;
  p.generator.j = 3;
  p.generator.rate = 0.8;
  p.steps = 25;
  TestRng r(1);
  Subspace M = random_subspace(r, X, 2);
  Subspace N = sum(M, random_subspace(r, X, 1));
  p.M = M;
  p.N = N;
  p.K = Mat::Zero(4, 4);
  FamilyTrace tr = walk_family(p, WalkKind::RelativeDim);
  CHECK(tr.constant);
  for (int v : tr.values) CHECK(v == M.dim() - N.dim());
}

TEST_CASE("composite generator stays constant too") {
  NormedSpace X = NormedSpace::l2(5);
  PathSpec p;
  p.generator.kind = GeneratorSpec::Kind::Composite;
  GeneratorSpec rot;
  rot.kind = GeneratorSpec::Kind::Rotation;
  rot.i = 1;
  rot.j = 4;
  rot.rate = 0.6;
  GeneratorSpec sh;
  sh.kind = GeneratorSpec::Kind::Shear;
  sh.i = 0;
  sh.j = 2;
  sh.rate = 0.3;
  p.generator.parts = {rot, sh};
  p.steps = 30;
  TestRng r(2);
  Subspace M = random_subspace(r, X, 2);
  Subspace N = random_subspace(r, X, 3);
  p.tetrad_base = Tetrad::of_pair(M, N);
  FamilyTrace tr = walk_family(p, WalkKind::TetradIndex);
  CHECK(tr.constant);
  for (int v : tr.values) CHECK(v == pair_index(M, N).index);
}

TEST_CASE("step halving shrinks the gap increments linearly") {
  NormedSpace X = NormedSpace::l2(4);
  auto max_inc = [&](int steps) {
    PathSpec p;
    p.generator.kind = GeneratorSpec::Kind::Rotation;
    p.generator.i = 0;
    p.generator.j = 2;
    p.generator.rate = 1.0;
    p.steps = steps;
    p.tetrad_base = r4_example(X);
    FamilyTrace tr = walk_family(p, WalkKind::TetradIndex);
    double m = 0;
    for (double v : tr.dhat_increments) m = std::max(m, v);
    return m;
  };
  double coarse = max_inc(20), fine = max_inc(40);
  CHECK(fine <= coarse / 2.0 * 2.5);
  CHECK(fine >= coarse / 2.0 / 2.5);
}

TEST_CASE("invalid bases are rejected") {
  PathSpec p;
  p.steps = 1;
  CHECK_THROWS_AS(walk_family(p, WalkKind::TetradIndex), InputError);
  p.steps = 5;
  CHECK_THROWS_AS(walk_family(p, WalkKind::TetradIndex), InputError);
  CHECK_THROWS_AS(walk_family(p, WalkKind::RelativeDim), InputError);
}
