#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapcert {

using Scalar = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Shared rank tolerance: every integer dimension decision in the library
/// goes through SVD rank counting at this relative threshold.
inline constexpr double kDefaultRankTol = 1e-9;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Dimension mismatch between vectors, bases, or ambient spaces.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Non-finite entries, malformed descriptors, rank-deficient bases.
class InputError : public Error {
public:
  using Error::Error;
};

/// A required subspace containment fails at tolerance.  Carries the
/// offending direction so the caller can see what sticks out.
class ContainmentError : public Error {
public:
  ContainmentError(const std::string& msg, Vec witness)
      : Error(msg), witness_(std::move(witness)) {}
  const Vec& witness() const { return witness_; }

private:
  Vec witness_;
};

/// A hypothesis gate of a checked statement is not certified.
class GateError : public Error {
public:
  using Error::Error;
};

/// A form does not have the signature a construction requires.
class SignatureError : public Error {
public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Certified enclosures

enum class Method { ExactL2, LpLinearProgram, Subgradient, Sampled };

std::string to_string(Method m);

/// Certified enclosure [lo, hi] of a nonnegative quantity.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  Method method = Method::Sampled;

  static Interval exact(double v, Method m = Method::ExactL2) {
    double pad = 1e-13 * (1.0 + std::abs(v));
    return Interval{v - pad < 0 ? 0.0 : v - pad, v + pad, m};
  }
  static Interval point(double v, Method m = Method::ExactL2) {
    return Interval{v, v, m};
  }
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

/// Outcome of a certificate check.  `conclusion_ok` is meaningful only when
/// the hypothesis gate passed; a failed conclusion under a passing gate is
/// a theorem-contradiction alarm.
struct Verdict {
  std::map<std::string, Interval> values;
  bool hypothesis_ok = false;
  bool conclusion_checked = false;
  bool conclusion_ok = false;
  std::vector<std::string> notes;
  std::optional<Vec> witness;

  bool alarm() const { return hypothesis_ok && conclusion_checked && !conclusion_ok; }
  void set(const std::string& name, Interval v) { values[name] = v; }
  void set(const std::string& name, double v) { values[name] = Interval::point(v, Method::ExactL2); }
};

inline bool is_finite(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

inline bool is_finite(const Mat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    if (!is_finite(Vec(m.col(j)))) return false;
  return true;
}

}  // namespace gapcert
