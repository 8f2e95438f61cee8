#include "opsys/linalg.hpp"

#include "opsys/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace opsys {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::InvalidPower: return "InvalidPower";
    case ErrorCode::FZeroViolation: return "FZeroViolation";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

RealVector singular_values(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> solver(a);
  return solver.singularValues();
}

}  // namespace

ComplexMatrix SpectralForm::reconstruct() const {
  return vectors * eigenvalues.cast<Complex>().asDiagonal() * vectors.adjoint();
}

ComplexMatrix SvdForm::reconstruct() const {
  const Eigen::Index k = singular.size();
  return left.leftCols(k) * singular.cast<Complex>().asDiagonal() * right.leftCols(k).adjoint();
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

double scale(const ComplexMatrix& a) { return std::max(1.0, operator_norm(a)); }

double default_rank_tol(const ComplexMatrix& a) {
  return kEps * static_cast<double>(std::max(a.rows(), a.cols()));
}

double numerical_zero(double matrix_scale, Eigen::Index dim) {
  return 64.0 * kEps * static_cast<double>(std::max<Eigen::Index>(dim, 1)) * matrix_scale;
}

void require_finite(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        throw Error(ErrorCode::NonFinite,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not finite");
      }
    }
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::NonSquare, std::string(what) + " needs a square matrix, got " +
                                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  ComplexMatrix h(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      h(i, j) = (a(i, j) + std::conj(a(j, i))) * 0.5;
    }
  }
  return h;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const ComplexMatrix skew = a - a.adjoint();
  return operator_norm(skew) <= tol * scale(a);
}

SpectralForm hermitian_eig(const ComplexMatrix& a, double tol) {
  require_square(a, "hermitian_eig");
  require_finite(a);
  if (!is_hermitian(a, tol)) {
    throw Error(ErrorCode::NonHermitian, "symmetry residual exceeds tolerance");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a));
  return SpectralForm{solver.eigenvalues(), solver.eigenvectors()};
}

SvdForm svd(const ComplexMatrix& a) {
  require_finite(a);
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return SvdForm{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

PolarForm polar(const ComplexMatrix& a, double rank_tol) {
  if (rank_tol < 0.0) rank_tol = default_rank_tol(a);
  const SvdForm s = svd(a);
  const Eigen::Index k = s.singular.size();
  const double cutoff = k > 0 ? rank_tol * s.singular(0) : 0.0;

  PolarForm out;
  out.v = ComplexMatrix::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < k; ++i) {
    if (s.singular(i) > cutoff) {
      out.v += s.left.col(i) * s.right.col(i).adjoint();
      ++out.rank;
    }
  }
  const auto sigma = s.singular.cast<Complex>().asDiagonal();
  out.absA = hermitian_part(s.right.leftCols(k) * sigma * s.right.leftCols(k).adjoint());
  out.absAstar = hermitian_part(s.left.leftCols(k) * sigma * s.left.leftCols(k).adjoint());
  return out;
}

ComplexMatrix hermitian_fun_calc(const ComplexMatrix& a, const ScalarFunction& f, double tol) {
  const SpectralForm eig = hermitian_eig(a, tol);
  RealVector mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped(i) = f(eig.eigenvalues(i));
  return hermitian_part(eig.vectors * mapped.cast<Complex>().asDiagonal() * eig.vectors.adjoint());
}

ComplexMatrix fun_calc(const ComplexMatrix& a, const ScalarFunction& f, double tol) {
  const SpectralForm eig = hermitian_eig(a, tol);
  const Eigen::Index n = eig.eigenvalues.size();
  if (n == 0) return a;
  const double s = std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff());
  if (eig.eigenvalues(0) < -tol * s) {
    throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(eig.eigenvalues(0)) +
                                       " below -tol*scale");
  }
  const double zero = numerical_zero(s, n);
  RealVector mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = eig.eigenvalues(i) <= zero ? 0.0 : eig.eigenvalues(i);
    mapped(i) = f(lambda);
  }
  return hermitian_part(eig.vectors * mapped.cast<Complex>().asDiagonal() * eig.vectors.adjoint());
}

ComplexMatrix support_projection(const ComplexMatrix& a, double rank_tol, double tol) {
  if (rank_tol < 0.0) rank_tol = default_rank_tol(a);
  const SpectralForm eig = hermitian_eig(a, tol);
  const Eigen::Index n = eig.eigenvalues.size();
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  if (n == 0) return p;
  const double lambda_max = eig.eigenvalues(n - 1);
  const double s = std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff());
  if (eig.eigenvalues(0) < -tol * s) {
    throw Error(ErrorCode::NotPSD, "support_projection needs a PSD matrix");
  }
  if (lambda_max <= 0.0) return p;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (eig.eigenvalues(i) > rank_tol * lambda_max) {
      p += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    }
  }
  return hermitian_part(p);
}

ComplexMatrix matrix_power(const ComplexMatrix& a, int k) {
  require_square(a, "matrix_power");
  if (k < 0) throw Error(ErrorCode::InvalidPower, "negative matrix power");
  ComplexMatrix result = ComplexMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) result = result * a;
  return result;
}

ComplexMatrix kron_identity(const ComplexMatrix& a, Eigen::Index m) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() * m, a.cols() * m);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * m, j * m, m, m).diagonal().setConstant(a(i, j));
    }
  }
  return out;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace opsys
