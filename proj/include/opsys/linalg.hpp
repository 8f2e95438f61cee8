#pragma once

// Dense complex linear algebra used by every other module: Hermitian
// eigendecomposition, SVD, polar decomposition and functional calculus.

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace opsys {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Scalar function applied spectrally.
using ScalarFunction = std::function<double(double)>;

/// Default tolerance for Hermitian / PSD membership tests, relative to scale().
inline constexpr double kDefaultTol = 1e-10;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
struct SpectralForm {
  RealVector eigenvalues;
  ComplexMatrix vectors;

  ComplexMatrix reconstruct() const;
};

/// A = left * diag(singular) * right^*, singular values descending.
struct SvdForm {
  ComplexMatrix left;
  RealVector singular;
  ComplexMatrix right;

  ComplexMatrix reconstruct() const;
};

/// a = v |a| = |a^*| v with v the canonical minimal partial isometry.
struct PolarForm {
  ComplexMatrix v;
  ComplexMatrix absA;
  ComplexMatrix absAstar;
  // Number of singular values kept in v.
  int rank = 0;
};

/// max(1, largest singular value).
double scale(const ComplexMatrix& a);

/// Largest singular value (0 for an empty matrix).
double operator_norm(const ComplexMatrix& a);

/// Machine epsilon times max(rows, cols).
double default_rank_tol(const ComplexMatrix& a);

/// Throws NonFinite if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a);

void require_square(const ComplexMatrix& a, const char* what);

bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTol);

/// (A + A^*) / 2, exactly Hermitian entrywise.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

SpectralForm hermitian_eig(const ComplexMatrix& a, double tol = kDefaultTol);

SvdForm svd(const ComplexMatrix& a);

/// Polar decomposition from the SVD. Singular values at or below
/// rank_tol * sigma_max are dropped from v; a negative rank_tol selects
/// default_rank_tol(a).
PolarForm polar(const ComplexMatrix& a, double rank_tol = -1.0);

/// U f(Lambda) U^* for a Hermitian matrix, no sign restriction on the spectrum.
ComplexMatrix hermitian_fun_calc(const ComplexMatrix& a, const ScalarFunction& f,
                                 double tol = kDefaultTol);

/// Functional calculus on a PSD matrix. Eigenvalues in [-tol*scale, 0) are
/// clamped to zero, and eigenvalues below the numerical-zero threshold
/// (see numerical_zero) are snapped to zero before f is applied.
ComplexMatrix fun_calc(const ComplexMatrix& a, const ScalarFunction& f, double tol = kDefaultTol);

/// Threshold below which a computed eigenvalue of a dim x dim Hermitian
/// matrix of the given scale is indistinguishable from zero.
double numerical_zero(double matrix_scale, Eigen::Index dim);

/// Orthogonal projection onto the span of eigenvectors with eigenvalue
/// above rank_tol * lambda_max. Negative rank_tol selects default_rank_tol.
ComplexMatrix support_projection(const ComplexMatrix& a, double rank_tol = -1.0,
                                 double tol = kDefaultTol);

/// Integer matrix power, k >= 0.
ComplexMatrix matrix_power(const ComplexMatrix& a, int k);

/// a (x) I_m, the outer-level action on an amplified element.
ComplexMatrix kron_identity(const ComplexMatrix& a, Eigen::Index m);

/// Direct sum diag(a, b).
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace opsys
