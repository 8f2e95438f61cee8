#pragma once

// Schatten p-norms on dense complex matrices and the operator-space
// machinery built on them.

#include "opsys/linalg.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace opsys {

/// An exponent p in [1, inf] together with its conjugate q, 1/p + 1/q = 1.
class Exponent {
 public:
  /// Throws Error(InvalidExponent) unless p >= 1 (infinity allowed).
  explicit Exponent(double p);

  static Exponent infinity();

  /// Accepts a decimal number or "inf" / "infinity".
  static Exponent parse(std::string_view text);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  bool is_infinite() const noexcept;
  bool is_one() const noexcept { return p_ == 1.0; }

  /// 1/p, zero at infinity.
  double inverse() const noexcept;

  std::string to_string() const;

 private:
  double p_;
  double q_;
};

Exponent dual_exponent(const Exponent& p);

/// x in M_n(S_p^m) stored as one nm x nm matrix made of n x n blocks of size m x m.
struct AmplifiedElement {
  Eigen::Index outer = 1;
  Eigen::Index inner = 1;
  ComplexMatrix mat;

  AmplifiedElement() = default;
  /// Throws DimensionMismatch unless mat is (outer*inner) square.
  AmplifiedElement(Eigen::Index outer, Eigen::Index inner, ComplexMatrix mat);

  ComplexMatrix block(Eigen::Index i, Eigen::Index j) const {
    return mat.block(i * inner, j * inner, inner, inner);
  }
};

/// e_i e_j^* (x) y.
AmplifiedElement single_block(Eigen::Index outer, Eigen::Index i, Eigen::Index j,
                              const ComplexMatrix& y);

/// n x n matrix of block traces of an (n*m) x (n*m) matrix.
ComplexMatrix block_trace(const ComplexMatrix& mat, Eigen::Index outer, Eigen::Index inner);

/// (a (x) I_m) x (b (x) I_m).
ComplexMatrix compress(const AmplifiedElement& x, const ComplexMatrix& a, const ComplexMatrix& b);

/// l_p norm of a nonnegative vector, computed with max-scaling.
double lp_norm(const RealVector& values, const Exponent& p);

double schatten_norm(const ComplexMatrix& a, const Exponent& p);

/// tr(b^* a).
Complex trace_pair(const ComplexMatrix& b, const ComplexMatrix& a);

/// Membership in the PSD cone: Hermitian within tol and lambda_min >= -tol*scale.
bool is_positive(const ComplexMatrix& a, double tol = kDefaultTol);

/// b with ||b||_q = 1 and tr(b^* a) = ||a||_p. For p = 1 this is the polar
/// partial isometry v. p = infinity is rejected (the dual ball is not smooth
/// there and the maximizer is not unique).
ComplexMatrix norming_functional(const ComplexMatrix& a, const Exponent& p);

/// Euclidean projection of z onto {x >= 0, ||x||_r <= 1}.
RealVector project_nonneg_ball(const RealVector& z, const Exponent& r);

/// Frobenius-nearest point of the S_r unit ball.
ComplexMatrix project_schatten_ball(const ComplexMatrix& a, const Exponent& r);

/// Frobenius-nearest point of {b PSD, ||b||_r <= 1} for Hermitian h.
ComplexMatrix project_psd_schatten_ball(const ComplexMatrix& h, const Exponent& r);

struct MnormOptions {
  int restarts = 4;
  int iters = 200;
  std::uint64_t seed = 0;
};

/// Objective on the compressed element y = (a (x) I) x (b (x) I) with an
/// ascent direction G in the sense d value ~ Re tr(G^* dy), up to a positive factor.
struct CompressionObjective {
  std::function<double(const ComplexMatrix&)> value;
  std::function<ComplexMatrix(const ComplexMatrix&)> direction;
};

/// Called with every accepted iterate (a, b).
using IterateObserver = std::function<void(const ComplexMatrix&, const ComplexMatrix&)>;

struct MnormEstimate {
  double lower_bound = 0.0;
  ComplexMatrix a;
  ComplexMatrix b;
};

/// Certified lower bound on ||x||_{M_n(S_p^m)} via
///   sup { ||(a (x) I) x (b (x) I)||_p : ||a||_2p, ||b||_2p <= 1 },
/// maximized by alternating projected gradient ascent with step halving.
/// Restart 0 starts from the scaled identity; the rest from seeded random
/// points. The best restart wins.
MnormEstimate mnorm_estimate(const AmplifiedElement& x, const Exponent& p,
                             const MnormOptions& options = {});

/// The ascent engine behind mnorm_estimate: maximizes objective over a, b in
/// the S_2p unit ball. lower_bound holds the best objective value.
MnormEstimate maximize_over_compressions(const AmplifiedElement& x, const Exponent& p,
                                         const CompressionObjective& objective,
                                         const MnormOptions& options,
                                         const IterateObserver& observer = {});

/// Ascent direction of ||y||_p up to a positive factor.
ComplexMatrix norm_ascent_direction(const ComplexMatrix& y, const Exponent& p);

}  // namespace opsys
