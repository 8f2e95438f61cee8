#pragma once

// The modified numerical radius
//   nu_p(x) = 2^(-1/p) sup { |tr(b [[0, x], [x^*, 0]])| : b PSD, ||b||_q <= 1 },
// its closed form, a projected-gradient oracle for the defining sup, the
// witness functional built from a dilation, and the verification harnesses.

#include "opsys/report.hpp"
#include "opsys/schatten.hpp"

#include <cstdint>

namespace opsys {

/// phi = tr(b .) on S_p^{2n}; positive and contractive when b is PSD with ||b||_q <= 1.
struct StateFunctional {
  ComplexMatrix b;
  Exponent q{1.0};

  double psd_violation() const;   // max(0, -lambda_min(b))
  double norm_excess() const;     // max(0, ||b||_q - 1)
  bool is_feasible(double tol = 1e-12) const;

  /// Re tr(b h).
  double evaluate(const ComplexMatrix& h) const;
};

/// 2^(-1/p) for finite p, 1 at infinity.
double radius_prefactor(const Exponent& p);

/// Closed form 2^(-1/p) ||P_+||_p with P_+ the positive part of off_diagonal(x).
double nu_p(const ComplexMatrix& x, const Exponent& p);

struct BruteforceOptions {
  int restarts = 8;
  int iters = 500;
  double step_tol = 1e-14;
  std::uint64_t seed = 0;
};

struct BruteforceResult {
  double value = 0.0;
  StateFunctional witness;
};

/// Maximizes b -> Re tr(b off_diagonal(x)) over {b PSD, ||b||_q <= 1} by
/// projected gradient ascent (Frobenius projection through the spectrum).
/// Restart 0 starts at b = 0, the others at seeded random PSD points. The
/// returned value is 2^(-1/p) times the objective at a feasible witness.
BruteforceResult nu_p_bruteforce(const ComplexMatrix& x, const Exponent& p,
                                 const BruteforceOptions& options = {});

/// (1/2) D(c) with c the norming functional of x; for p = 1, c is the
/// polar partial isometry and the witness is a projection.
StateFunctional witness_functional(const ComplexMatrix& x, const Exponent& p);

struct TheoremOptions {
  bool run_oracle = true;
  BruteforceOptions oracle;
  // The 1e-4 oracle gap is only enforced up to this size.
  Eigen::Index oracle_gap_max_n = 4;
};

/// Checks 2^(-1/p) ||x||_p <= nu_p(x) <= ||x||_p together with the witness
/// and oracle lower bounds.
VerificationReport verify_theorem(const ComplexMatrix& x, const Exponent& p,
                                  const TheoremOptions& options = {});

/// The diagonal element (1, 1) of l_p^2: norm 2^(1/p), radius 1, plus a replay
/// of the certificate bounding tr(F J) for pattern functionals F.
VerificationReport tightness_example(const Exponent& p);

/// The 4x4 pattern [[1,.,1,.],[.,1,.,1],[1,.,1,.],[.,1,.,1]].
ComplexMatrix tightness_pattern();

struct ScaledRadiusResult {
  double value = 0.0;
  ComplexMatrix a;
  ComplexMatrix b;
  // Largest ||a (+) b^*||_2p seen over accepted iterates.
  double max_compression_norm = 0.0;
  // Smallest lambda_min / scale of the compressed functional over iterates.
  double min_compressed_eigenvalue = 0.0;
};

/// Lower bound for the Werner radius of x in M_n(S_p^m):
///   sup { nu_p((a (x) I) x (b (x) I)) : a, b in the S_2p unit ball }.
ScaledRadiusResult scaled_radius_lower(const AmplifiedElement& x, const Exponent& p,
                                       const MnormOptions& options = {});

}  // namespace opsys
