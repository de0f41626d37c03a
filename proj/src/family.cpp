#include "gapcert/family.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

namespace gapcert {

Mat GeneratorSpec::at(int n, double t) const {
  switch (kind) {
    case Kind::Rotation:
      return givens_rotation(n, i, j, rate * t);
    case Kind::Shear:
      return shear(n, i, j, rate * t);
    case Kind::Composite: {
      Mat G = Mat::Identity(n, n);
      for (const auto& part : parts) G = part.at(n, t) * G;
      return G;
    }
  }
  throw InputError("unknown generator kind");
}

namespace {

struct Snapshot {
  int value = 0;
  Subspace M;  // the moving subspace tracked for gap increments
};

Snapshot eval_at(const PathSpec& p, WalkKind kind, double t) {
  Snapshot s{0, Subspace()};
  if (kind == WalkKind::TetradIndex) {
    if (!p.tetrad_base) throw InputError("walk_family: tetrad base missing");
    const Tetrad& b = *p.tetrad_base;
    const int n = b.M.ambient_dim();
    Mat G = p.generator.at(n, t);
    if (!is_invertible(G)) {
      std::ostringstream os;
      os << "walk_family: generator singular at t = " << t;
      throw InputError(os.str());
    }
    Tetrad moved(map_subspace(G, b.Y1), map_subspace(G, b.M), map_subspace(G, b.N),
                 map_subspace(G, b.Y2));
    s.value = moved.index;
    s.M = moved.M;
    return s;
  }
  if (!p.M || !p.N || !p.K) throw InputError("walk_family: relative-dim base missing");
  const int n = p.M->ambient_dim();
  Mat G = p.generator.at(n, t);
  if (!is_invertible(G)) {
    std::ostringstream os;
    os << "walk_family: generator singular at t = " << t;
    throw InputError(os.str());
  }
  Mat T = G * (Mat::Identity(n, n) + *p.K) * G.partialPivLu().inverse();
  Subspace Mt = map_subspace(G, *p.M);
  Subspace Nt = map_subspace(G, *p.N);
  PerturbationOperator Kt =
      PerturbationOperator::make(p.M->space(), Mat(T - Mat::Identity(n, n)), 64);
  try {
    s.value = relative_dim(Mt, Nt, Kt).value;
  } catch (const ContainmentError&) {
    std::ostringstream os;
    os << "walk_family: containment lost at t = " << t;
    throw Error(os.str());
  }
  s.M = Mt;
  return s;
}

}  // namespace

FamilyTrace walk_family(const PathSpec& p, WalkKind kind) {
  if (p.steps < 2) throw InputError("walk_family: steps must be at least 2");
  FamilyTrace tr;
  tr.constant = true;
  std::vector<Snapshot> snaps;
  snaps.reserve(p.steps + 1);
  for (int k = 0; k <= p.steps; ++k) {
    double t = static_cast<double>(k) / p.steps;
    tr.ts.push_back(t);
    snaps.push_back(eval_at(p, kind, t));
    tr.values.push_back(snaps.back().value);
    if (k > 0) {
      Interval dh = gap_delta_hat(snaps[k - 1].M, snaps[k].M, 200, 17 * k + 1);
      tr.dhat_increments.push_back(dh.hi);
    }
  }
  for (int k = 0; k < p.steps; ++k) {
    if (tr.values[k] == tr.values[k + 1]) continue;
    // The theorems forbid true jumps; treat as a tolerance incident and
    // bisect to localize before surfacing.
    double lo = tr.ts[k], hi = tr.ts[k + 1];
    int vlo = tr.values[k], vhi = tr.values[k + 1];
    while (hi - lo > 1e-6) {
      double mid = 0.5 * (lo + hi);
      int vm = eval_at(p, kind, mid).value;
      if (vm == vlo)
        lo = mid;
      else {
        hi = mid;
        vhi = vm;
      }
    }
    if (vlo != vhi) {
      tr.constant = false;
      std::ostringstream os;
      os << "trace jump " << vlo << " -> " << vhi << " localized near t = "
         << 0.5 * (lo + hi);
      tr.notes.push_back(os.str());
    }
  }
  return tr;
}

}  // namespace gapcert
