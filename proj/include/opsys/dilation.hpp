#pragma once

// The block dilation D(a) = [[|a^*|, a], [a^*, |a|]] and its identities:
// positivity, the closed-form powers, functional calculus, the spectral
// measure of D(a)/2 and the p-norm doubling ||D(a)||_p = 2 ||a||_p.

#include "opsys/linalg.hpp"
#include "opsys/report.hpp"
#include "opsys/schatten.hpp"

#include <vector>

namespace opsys {

struct DilationMatrix {
  Eigen::Index n = 0;
  ComplexMatrix mat;  // 2n x 2n
};

struct SpectralAtom {
  double eigenvalue = 0.0;
  ComplexMatrix projection;
};

/// Finite spectral measure of D(a)/2: one atom per distinct positive
/// singular value of a plus the point mass at zero.
struct DilationSpectralMeasure {
  std::vector<SpectralAtom> atoms;  // ascending eigenvalue, all > 0
  ComplexMatrix zero_atom;

  /// Measure of the interval [lo, hi]; the zero atom is included when lo <= 0 <= hi.
  ComplexMatrix measure(double lo, double hi) const;

  /// sum of eigenvalue * projection.
  ComplexMatrix reconstruct() const;
};

/// [[B, a], [a^*, C]] for square blocks.
ComplexMatrix assemble_blocks(const ComplexMatrix& top_left, const ComplexMatrix& top_right,
                              const ComplexMatrix& bottom_left, const ComplexMatrix& bottom_right);

DilationMatrix dilate(const ComplexMatrix& a);

/// [[0, x], [x^*, 0]].
ComplexMatrix off_diagonal(const ComplexMatrix& x);

/// D(a)^k via 2^(k-1) [[|a*|^k, |a*|^(k-1) a], [a^* |a*|^(k-1), |a|^k]].
ComplexMatrix dilation_power(const ComplexMatrix& a, int k);

/// (1/2) [[f(|a*|), f(|a*|) v], [v^* f(|a*|), f(|a|)]] from the polar form.
/// With require_f0 set, |f(0)| above 1e-12 throws FZeroViolation.
ComplexMatrix dilation_calculus(const ComplexMatrix& a, const ScalarFunction& f,
                                bool require_f0 = true);

/// f(D(a)/2) computed directly by diagonalizing the dilation.
ComplexMatrix dilation_calculus_direct(const ComplexMatrix& a, const ScalarFunction& f);

/// Singular values of a within rank_tol * sigma_max of each other share an
/// atom. Negative rank_tol selects default_rank_tol(a).
DilationSpectralMeasure dilation_spectral_measure(const ComplexMatrix& a, double rank_tol = -1.0);

/// The zero-atom formula [[I - vv^*/2, -v/2], [-v^*/2, I - v^*v/2]].
ComplexMatrix dilation_zero_atom(const ComplexMatrix& v);

/// Compares ||D(a)||_p with 2 ||a||_p and checks that D(a) is PSD.
VerificationReport dilation_norm_check(const ComplexMatrix& a, const Exponent& p);

}  // namespace opsys
