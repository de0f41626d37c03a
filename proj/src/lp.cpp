#include "gapcert/lp.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numeric>

namespace gapcert {

namespace {

constexpr double kPivTol = 1e-10;

struct Tableau {
  RealMat A;            // m x n structural columns, rows flipped so b >= 0
  RealVec b;
  std::vector<int> basis;  // size m; >= n means artificial for that row

  RealVec column(int j) const {
    if (j < A.cols()) return A.col(j);
    RealVec e = RealVec::Zero(A.rows());
    e[j - static_cast<int>(A.cols())] = 1.0;
    return e;
  }

  RealMat basis_matrix() const {
    RealMat B(A.rows(), A.rows());
    for (int i = 0; i < A.rows(); ++i) B.col(i) = column(basis[i]);
    return B;
  }
};

/// One simplex phase with Bland's rule over candidate entering columns.
/// Returns false on iteration-limit or unboundedness.
bool run_phase(Tableau& t, const RealVec& cost, const std::vector<int>& candidates,
               int max_iter, int& iterations, RealVec& xB, RealVec& y) {
  const int m = static_cast<int>(t.A.rows());
  for (; iterations < max_iter; ++iterations) {
    Eigen::PartialPivLU<RealMat> lu(t.basis_matrix());
    xB = lu.solve(t.b);
    RealVec cB(m);
    for (int i = 0; i < m; ++i) cB[i] = cost[t.basis[i]];
    y = lu.transpose().solve(cB);

    int enter = -1;
    for (int j : candidates) {
      bool basic = false;
      for (int i = 0; i < m; ++i)
        if (t.basis[i] == j) { basic = true; break; }
      if (basic) continue;
      if (cost[j] - y.dot(t.column(j)) < -kPivTol) { enter = j; break; }
    }
    if (enter < 0) return true;

    RealVec d = lu.solve(t.column(enter));
    int leave = -1;
    double best = kInf;
    for (int i = 0; i < m; ++i) {
      if (d[i] > kPivTol) {
        double ratio = std::max(xB[i], 0.0) / d[i];
        if (ratio < best - kPivTol ||
            (ratio < best + kPivTol && (leave < 0 || t.basis[i] < t.basis[leave]))) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded along entering direction
    t.basis[leave] = enter;
  }
  return false;
}

}  // namespace

LpResult solve_lp(const RealMat& A, const RealVec& b, const RealVec& c, int max_iter) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n) throw ShapeError("solve_lp: inconsistent shapes");

  LpResult res;
  Tableau t{A, b, {}};
  RealVec row_sign = RealVec::Ones(m);
  for (int i = 0; i < m; ++i) {
    if (t.b[i] < 0.0) {
      t.A.row(i) *= -1.0;
      t.b[i] *= -1.0;
      row_sign[i] = -1.0;
    }
  }
  t.basis.resize(m);
  std::iota(t.basis.begin(), t.basis.end(), n);

  // Phase 1: minimize the sum of artificials.
  RealVec cost1 = RealVec::Zero(n + m);
  cost1.tail(m).setOnes();
  std::vector<int> all(n + m);
  std::iota(all.begin(), all.end(), 0);
  RealVec xB, y;
  if (!run_phase(t, cost1, all, max_iter, res.iterations, xB, y)) return res;
  double art = 0.0;
  for (int i = 0; i < m; ++i)
    if (t.basis[i] >= n) art += std::abs(xB[i]);
  if (art > 1e-7 * (1.0 + t.b.lpNorm<1>())) {
    res.infeasible = true;
    return res;
  }

  // Pivot remaining zero-level artificials out where a structural column can
  // replace them; rows where none can are redundant and stay harmlessly
  // degenerate (the artificial is excluded from phase-2 candidates).
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    Eigen::PartialPivLU<RealMat> lu(t.basis_matrix());
    for (int j = 0; j < n; ++j) {
      bool basic = false;
      for (int k = 0; k < m; ++k)
        if (t.basis[k] == j) { basic = true; break; }
      if (basic) continue;
      RealVec d = lu.solve(t.column(j));
      if (std::abs(d[i]) > 1e-7) {
        t.basis[i] = j;
        break;
      }
    }
  }

  // Phase 2 over structural columns only.
  RealVec cost2 = RealVec::Zero(n + m);
  cost2.head(n) = c;
  std::vector<int> structural(n);
  std::iota(structural.begin(), structural.end(), 0);
  if (!run_phase(t, cost2, structural, max_iter, res.iterations, xB, y)) return res;

  res.optimal = true;
  res.x = RealVec::Zero(n);
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n) res.x[t.basis[i]] = xB[i];
  res.value = c.dot(res.x);
  res.dual = RealVec(m);
  for (int i = 0; i < m; ++i) res.dual[i] = row_sign[i] * y[i];
  return res;
}

}  // namespace gapcert
