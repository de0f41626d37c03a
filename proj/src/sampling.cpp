#include "gapcert/sampling.hpp"

#include <cmath>

namespace gapcert {

namespace {

constexpr double kPi = 3.14159265358979323846;

double frac(double x) { return x - std::floor(x); }

const int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                       41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

Vec coeff_to_unit(const Subspace& M, const RealVec& g) {
  const int k = M.dim();
  Vec c(k);
  bool cx = M.space().field() == Field::Complex;
  for (int i = 0; i < k; ++i)
    c[i] = cx ? Scalar(g[2 * i], g[2 * i + 1]) : Scalar(g[i], 0.0);
  if (c.norm() < 1e-12) c[0] = 1.0;
  Vec v = M.onb() * c;
  return v / M.space().norm(v);
}

}  // namespace

LowDiscrepancy::LowDiscrepancy(int dim, uint64_t seed) {
  alpha_.resize(dim);
  state_.resize(dim);
  for (int i = 0; i < dim; ++i) {
    alpha_[i] = frac(std::sqrt(static_cast<double>(
        kPrimes[i % (sizeof(kPrimes) / sizeof(int))])) *
        (1.0 + static_cast<double>(i / 24) * 0.0137));
    // Seed-dependent starting phase, decorrelated across coordinates.
    uint64_t h = seed * 6364136223846793005ULL + 1442695040888963407ULL * (i + 1);
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    state_[i] = frac(static_cast<double>(h >> 11) * 0x1.0p-53);
  }
}

RealVec LowDiscrepancy::next() {
  for (int i = 0; i < state_.size(); ++i) state_[i] = frac(state_[i] + alpha_[i]);
  return state_;
}

RealVec LowDiscrepancy::next_gaussian(int m) {
  RealVec out(m);
  int have = 0;
  while (have < m) {
    RealVec u = next();
    for (int i = 0; i + 1 < u.size() && have < m; i += 2) {
      double u1 = std::max(u[i], 1e-16), u2 = u[i + 1];
      double r = std::sqrt(-2.0 * std::log(u1));
      out[have++] = r * std::cos(2.0 * kPi * u2);
      if (have < m) out[have++] = r * std::sin(2.0 * kPi * u2);
    }
    if (u.size() < 2) {
      double u1 = std::max(u[0], 1e-16);
      out[have++] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * frac(u[0] * 1000.0));
    }
  }
  return out;
}

std::vector<Vec> sphere_samples(const Subspace& M, int count, uint64_t seed) {
  std::vector<Vec> out;
  if (M.is_zero() || count <= 0) return out;
  const int k = M.dim();
  const int m = (M.space().field() == Field::Complex) ? 2 * k : k;
  LowDiscrepancy seq(std::max(2, m), seed);
  out.reserve(count);
  for (int t = 0; t < count; ++t) out.push_back(coeff_to_unit(M, seq.next_gaussian(m)));
  return out;
}

Vec refine_on_sphere(const Subspace& M, const Vec& start,
                     const std::function<double(const Vec&)>& score, int steps,
                     uint64_t seed) {
  if (M.is_zero()) return start;
  const int k = M.dim();
  const int m = (M.space().field() == Field::Complex) ? 2 * k : k;
  LowDiscrepancy seq(std::max(2, m), seed ^ 0x9e3779b97f4a7c15ULL);
  Vec best = start;
  double bv = score(best);
  Vec c = M.onb().adjoint() * best;
  double radius = 0.25;
  for (int s = 0; s < steps; ++s) {
    bool improved = false;
    for (int trial = 0; trial < 4; ++trial) {
      RealVec g = seq.next_gaussian(m);
      Vec dc(k);
      bool cx = M.space().field() == Field::Complex;
      for (int i = 0; i < k; ++i)
        dc[i] = cx ? Scalar(g[2 * i], g[2 * i + 1]) : Scalar(g[i], 0.0);
      Vec cand_c = c + radius * dc / std::max(dc.norm(), 1e-300);
      Vec v = M.onb() * cand_c;
      double nv = M.space().norm(v);
      if (nv < 1e-12) continue;
      v /= nv;
      double sv = score(v);
      if (sv > bv) {
        bv = sv;
        best = v;
        c = M.onb().adjoint() * best;
        improved = true;
      }
    }
    radius *= improved ? 1.4 : 0.6;
    if (radius < 1e-9) break;
  }
  return best;
}

}  // namespace gapcert
