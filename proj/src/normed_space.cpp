#include "gapcert/normed_space.hpp"

#include <cmath>
#include <random>

namespace gapcert {

std::string to_string(Method m) {
  switch (m) {
    case Method::ExactL2: return "exact-l2";
    case Method::LpLinearProgram: return "lp-linear-program";
    case Method::Subgradient: return "subgradient";
    case Method::Sampled: return "sampled";
  }
  return "?";
}

NormedSpace::NormedSpace(int dim, Field field, NormDesc norm)
    : dim_(dim), field_(field), norm_(std::move(norm)) {
  if (dim_ < 1) throw InputError("space dimension must be >= 1");
  if (!(norm_.p >= 1.0))
    throw InputError("norm exponent must satisfy p >= 1");
  if (norm_.weighted()) {
    if (norm_.weights.size() != dim_)
      throw ShapeError("weight vector length does not match dimension");
    for (int i = 0; i < dim_; ++i)
      if (!(norm_.weights[i] > 0.0) || !std::isfinite(norm_.weights[i]))
        throw InputError("weights must be strictly positive and finite");
  }
}

double NormedSpace::norm(const Vec& x) const {
  if (x.size() != dim_) throw ShapeError("vector length does not match space dimension");
  const double p = norm_.p;
  if (p == kInf) {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i) m = std::max(m, weight(i) * std::abs(x[i]));
    return m;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += weight(i) * std::norm(x[i]);
    return std::sqrt(s);
  }
  if (p == 1.0) {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += weight(i) * std::abs(x[i]);
    return s;
  }
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += weight(i) * std::pow(std::abs(x[i]), p);
  return std::pow(s, 1.0 / p);
}

double NormedSpace::dual_norm(const Vec& f) const {
  return dual().norm(f);
}

NormedSpace NormedSpace::dual() const {
  const double p = norm_.p;
  NormDesc d;
  if (p == 1.0) {
    d.p = kInf;
  } else if (p == kInf) {
    d.p = 1.0;
  } else {
    d.p = p / (p - 1.0);
  }
  if (norm_.weighted()) {
    d.weights.resize(dim_);
    if (p == 1.0 || p == kInf) {
      for (int i = 0; i < dim_; ++i) d.weights[i] = 1.0 / norm_.weights[i];
    } else {
      // ||f||_* = (sum w^{1-q} |f|^q)^{1/q}
      for (int i = 0; i < dim_; ++i) d.weights[i] = std::pow(norm_.weights[i], 1.0 - d.p);
    }
  }
  return NormedSpace(dim_, field_, d);
}

std::pair<double, double> NormedSpace::euclidean_equivalence() const {
  const double p = norm_.p;
  const double n = static_cast<double>(dim_);
  double wmin = 1.0, wmax = 1.0;
  if (norm_.weighted()) {
    wmin = norm_.weights.minCoeff();
    wmax = norm_.weights.maxCoeff();
  }
  if (p == kInf) {
    // max w|x| in [wmin/sqrt(n) ||x||_2, wmax ||x||_2]
    return {wmin / std::sqrt(n), wmax};
  }
  // ||x|| = || W^{1/p} x ||_p with plain p-norm constants vs l2
  double a = std::pow(wmin, 1.0 / p), b = std::pow(wmax, 1.0 / p);
  double c = std::pow(n, 1.0 / p - 0.5);
  if (p <= 2.0) return {a, b * c};
  return {a * c, b};
}

RealVec NormedSpace::l2_scaling() const {
  if (!is_l2()) throw InputError("l2_scaling requires p == 2");
  RealVec d(dim_);
  for (int i = 0; i < dim_; ++i) d[i] = std::sqrt(weight(i));
  return d;
}

bool NormedSpace::operator==(const NormedSpace& o) const {
  if (dim_ != o.dim_ || field_ != o.field_ || norm_.p != o.norm_.p) return false;
  if (norm_.weighted() != o.norm_.weighted()) return false;
  if (norm_.weighted() && norm_.weights != o.norm_.weights) return false;
  return true;
}

bool spot_check_norm_axioms(const NormedSpace& X, uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto rand_vec = [&]() {
    Vec v(X.dim());
    for (int i = 0; i < X.dim(); ++i)
      v[i] = Scalar(g(rng), X.field() == Field::Complex ? g(rng) : 0.0);
    return v;
  };
  const double tol = 1e-10;
  for (int t = 0; t < trials; ++t) {
    Vec x = rand_vec(), y = rand_vec();
    double nx = X.norm(x), ny = X.norm(y);
    if (nx <= 0.0 && x.norm() > 1e-12) return false;
    double s = g(rng);
    if (std::abs(X.norm(Vec(s * x)) - std::abs(s) * nx) > tol * (1.0 + nx)) return false;
    if (X.norm(Vec(x + y)) > nx + ny + tol * (1.0 + nx + ny)) return false;
  }
  return true;
}

}  // namespace gapcert
