#pragma once

#include "gapcert/gap.hpp"
#include "gapcert/splitting.hpp"

namespace gapcert {

struct MorseIndices {
  int m_plus = 0, m_minus = 0, m_zero = 0;
};

/// A bounded symmetric (sesquilinear over C) form Q on a subspace V, given
/// by its Gram array in V's basis.  Q(x, y) is conjugate-linear in x.
class SymmetricPair {
public:
  SymmetricPair() = default;
  SymmetricPair(Subspace V, Mat gram_in_basis, double hermitian_tol = 1e-10);

  const Subspace& V() const { return V_; }
  const Mat& gram() const { return gram_; }
  /// Gram array re-expressed in the Euclidean-orthonormal basis of V.
  const Mat& gram_onb() const { return gram_onb_; }

  Scalar eval(const Vec& x, const Vec& y) const;
  /// The same form restricted to S (S inside V).
  SymmetricPair restricted(const Subspace& S) const;
  SymmetricPair scaled(double h) const;

private:
  Subspace V_;
  Mat gram_, gram_onb_;
};

/// Sylvester signature of the form at the shared rank tolerance.
MorseIndices morse_indices(const SymmetricPair& Q);

/// Enclosure of ||Q|| (sup-ratio norm on V in the ambient norm).
Interval form_norm(const SymmetricPair& Q);

/// (||Q||, gamma(Q)); gamma(Q) requires Q semi-definite (signature error
/// otherwise) and is the reduced minimum modulus transverse to V^Q.
std::pair<Interval, Interval> form_metrics(const SymmetricPair& Q);

/// lambda^Q = {u in V : Q(u, v) = 0 for all v in lambda}; lambda inside V.
Subspace form_annihilator(const SymmetricPair& Q, const Subspace& lambda);

/// V^Q, the radical of the form.
Subspace form_kernel(const SymmetricPair& Q);

/// Quotient form on a complement of an isotropic eps inside eps^Q.
SymmetricPair reduced_form(const SymmetricPair& Q, const Subspace& eps);

/// V = alpha (+) alpha^Q for Q-definite alpha.
struct FormDecomposition {
  Subspace alpha, alphaQ;
  Verdict checks;
};
FormDecomposition decompose_definite(const SymmetricPair& Q, const Subspace& alpha);

/// Maximal hQ-positive-definite subspace by eigenvector selection, with the
/// complement's semi-definiteness verdict.
struct MaximalDefinite {
  Subspace alpha_max;
  bool complement_semidefinite = false;
};
MaximalDefinite maximal_definite(const SymmetricPair& Q, int h);

/// The c-gap between two forms: smallest delta making the mixed comparison
/// inequality hold with Lipschitz cross terms weighted by c.  Sampling
/// normalizes ||x|| + ||u|| = ||y|| + ||v|| = 1.
struct CGapReport {
  Interval value;
  double c = 0.0;
  int samples = 0;
  uint64_t seed = 0;
};

CGapReport c_gap(const SymmetricPair& Q, const SymmetricPair& R, double c,
                 int budget = 2000, uint64_t seed = 0);

/// Closeness of form annihilators of definite finite-dimensional subspaces:
/// gates on eta < 1/n and checks hR definite on beta plus both directed-gap
/// bounds (printed constants, with the proof-level constants cross-checked).
Verdict annihilator_gap_certificate(const SymmetricPair& Q, const Subspace& alpha,
                                    const SymmetricPair& R, const Subspace& beta,
                                    double c, int h, int budget = 2000,
                                    uint64_t seed = 0);

enum class MorseVariant { Thm16, Prop17, PropDefinite };

Verdict verify_morse_stability(const SymmetricPair& Q, const Subspace& V0,
                               const SymmetricPair& R, const Subspace& W0, int h,
                               double c, MorseVariant variant, int budget = 2000,
                               uint64_t seed = 0);

}  // namespace gapcert
