#pragma once

#include "gapcert/reldim.hpp"
#include "gapcert/tetrad.hpp"

namespace gapcert {

/// One-parameter group of invertible maps G(t), t in [0, 1].
struct GeneratorSpec {
  enum class Kind { Rotation, Shear, Composite };
  Kind kind = Kind::Rotation;
  int i = 0, j = 1;       // plane / direction coordinates
  double rate = 0.0;      // angle or shear amount at t = 1
  std::vector<GeneratorSpec> parts;  // for Composite

  Mat at(int n, double t) const;
};

/// A walkable path: a base instance at t = 0 moved by G(t).
struct PathSpec {
  GeneratorSpec generator;
  int steps = 2;
  std::optional<Tetrad> tetrad_base;
  // relative-dim base: the pair plus the perturbation conjugated along the
  // path, K(t) = G(t)(I + K)G(t)^-1 - I.
  std::optional<Subspace> M, N;
  std::optional<Mat> K;
};

enum class WalkKind { TetradIndex, RelativeDim };

struct FamilyTrace {
  std::vector<double> ts;
  std::vector<int> values;
  std::vector<double> dhat_increments;  // delta_hat(M(t_i), M(t_{i+1})) upper bounds
  bool constant = false;
  std::vector<std::string> notes;
};

/// Evaluates the integer invariant along the grid and verifies constancy.
/// A detected jump is bisected down to step 1e-6 before being reported.
FamilyTrace walk_family(const PathSpec& p, WalkKind kind);

}  // namespace gapcert
