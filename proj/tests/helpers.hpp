#pragma once

#include "gapcert/subspace.hpp"

#include <random>

namespace gapcert::testing {

struct TestRng {
  std::mt19937_64 g;
  explicit TestRng(uint64_t seed) : g(seed) {}
  double uniform() { return (g() >> 11) * 0x1.0p-53; }
  double gauss() {
    double u = std::max(uniform(), 1e-300), v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
  }
  int pick(int lo, int hi) {
    return lo + static_cast<int>(uniform() * (hi - lo + 1)) % (hi - lo + 1);
  }
  Mat gaussian(int rows, int cols, bool complex = false) {
    Mat A(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i)
        A(i, j) = Scalar(gauss(), complex ? gauss() : 0.0);
    return A;
  }
  Vec gvec(int n, bool complex = false) { return gaussian(n, 1, complex).col(0); }
};

inline Subspace random_subspace(TestRng& r, const NormedSpace& X, int k) {
  if (k == 0) return Subspace::zero(X);
  return Subspace(X, r.gaussian(X.dim(), k, X.field() == Field::Complex));
}

inline Vec unit(const NormedSpace& X, const Vec& v) { return v / X.norm(v); }

}  // namespace gapcert::testing
