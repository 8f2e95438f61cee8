#include "opsys/dilation.hpp"

#include "opsys/error.hpp"

#include <algorithm>
#include <cmath>

namespace opsys {

ComplexMatrix DilationSpectralMeasure::measure(double lo, double hi) const {
  ComplexMatrix out = ComplexMatrix::Zero(zero_atom.rows(), zero_atom.cols());
  if (lo <= 0.0 && 0.0 <= hi) out += zero_atom;
  for (const auto& atom : atoms) {
    if (lo <= atom.eigenvalue && atom.eigenvalue <= hi) out += atom.projection;
  }
  return out;
}

ComplexMatrix DilationSpectralMeasure::reconstruct() const {
  ComplexMatrix out = ComplexMatrix::Zero(zero_atom.rows(), zero_atom.cols());
  for (const auto& atom : atoms) out += atom.eigenvalue * atom.projection;
  return out;
}

ComplexMatrix assemble_blocks(const ComplexMatrix& top_left, const ComplexMatrix& top_right,
                              const ComplexMatrix& bottom_left, const ComplexMatrix& bottom_right) {
  const Eigen::Index n = top_left.rows();
  ComplexMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = top_left;
  out.topRightCorner(n, n) = top_right;
  out.bottomLeftCorner(n, n) = bottom_left;
  out.bottomRightCorner(n, n) = bottom_right;
  return out;
}

DilationMatrix dilate(const ComplexMatrix& a) {
  require_square(a, "dilate");
  const PolarForm pf = polar(a);
  return DilationMatrix{a.rows(), assemble_blocks(pf.absAstar, a, a.adjoint(), pf.absA)};
}

ComplexMatrix off_diagonal(const ComplexMatrix& x) {
  require_square(x, "off_diagonal");
  const Eigen::Index n = x.rows();
  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  return assemble_blocks(zero, x, x.adjoint(), zero);
}

ComplexMatrix dilation_power(const ComplexMatrix& a, int k) {
  require_square(a, "dilation_power");
  if (k < 1) throw Error(ErrorCode::InvalidPower, "dilation_power needs k >= 1");
  const PolarForm pf = polar(a);
  const ComplexMatrix lower = matrix_power(pf.absAstar, k - 1);
  const double factor = std::ldexp(1.0, k - 1);
  return factor * assemble_blocks(lower * pf.absAstar, lower * a, a.adjoint() * lower,
                                  matrix_power(pf.absA, k));
}

ComplexMatrix dilation_calculus(const ComplexMatrix& a, const ScalarFunction& f, bool require_f0) {
  require_square(a, "dilation_calculus");
  // D(a)/2 always has an n-dimensional kernel, so f(0) enters even for invertible a.
  if (require_f0 && std::abs(f(0.0)) > 1e-12) {
    throw Error(ErrorCode::FZeroViolation, "f(0) must vanish");
  }
  // f(|a*|) = U f(S) U^* and f(|a|) = V f(S) V^* straight from one SVD; a
  // second eigensolve of the computed |a*| would double the rounding error.
  const Eigen::Index n = a.rows();
  const SvdForm s = svd(a);
  const double zero = numerical_zero(scale(a), n);
  RealVector mapped(s.singular.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    mapped(i) = f(s.singular(i) <= zero ? 0.0 : s.singular(i));
  }
  const auto fs = mapped.cast<Complex>().asDiagonal();
  const ComplexMatrix f_star = hermitian_part(s.left * fs * s.left.adjoint());
  const ComplexMatrix f_abs = hermitian_part(s.right * fs * s.right.adjoint());
  const ComplexMatrix corner = f_star * polar(a).v;
  return 0.5 * assemble_blocks(f_star, corner, corner.adjoint(), f_abs);
}

ComplexMatrix dilation_calculus_direct(const ComplexMatrix& a, const ScalarFunction& f) {
  return fun_calc(0.5 * dilate(a).mat, f);
}

ComplexMatrix dilation_zero_atom(const ComplexMatrix& v) {
  const Eigen::Index n = v.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  return assemble_blocks(id - 0.5 * v * v.adjoint(), -0.5 * v, -0.5 * v.adjoint(),
                         id - 0.5 * v.adjoint() * v);
}

DilationSpectralMeasure dilation_spectral_measure(const ComplexMatrix& a, double rank_tol) {
  require_square(a, "dilation_spectral_measure");
  if (rank_tol < 0.0) rank_tol = default_rank_tol(a);
  const Eigen::Index n = a.rows();
  const SvdForm s = svd(a);
  const double cutoff = n > 0 ? rank_tol * s.singular(0) : 0.0;

  // Kept singular values form a prefix because they are sorted descending.
  Eigen::Index rank = 0;
  while (rank < n && s.singular(rank) > cutoff) ++rank;
  const ComplexMatrix v = s.left.leftCols(rank) * s.right.leftCols(rank).adjoint();
  const ComplexMatrix vstar_v = v.adjoint() * v;

  DilationSpectralMeasure out;
  Eigen::Index start = 0;
  while (start < rank) {
    Eigen::Index end = start + 1;
    while (end < rank && s.singular(end - 1) - s.singular(end) <= cutoff) ++end;
    const ComplexMatrix w = s.right.middleCols(start, end - start);
    const ComplexMatrix e = w * w.adjoint();
    const ComplexMatrix ve = v * e;
    SpectralAtom atom;
    atom.eigenvalue = s.singular.segment(start, end - start).mean();
    atom.projection = hermitian_part(0.5 * assemble_blocks(ve * v.adjoint(), ve, ve.adjoint(),
                                                           vstar_v * e));
    out.atoms.push_back(std::move(atom));
    start = end;
  }
  std::reverse(out.atoms.begin(), out.atoms.end());
  out.zero_atom = dilation_zero_atom(v);
  return out;
}

VerificationReport dilation_norm_check(const ComplexMatrix& a, const Exponent& p) {
  require_square(a, "dilation_norm_check");
  VerificationReport report;
  report.check_name = "dilation_norm";
  report.set_input("n", a.rows());
  report.set_input("p", exponent_value(p.p()));

  const DilationMatrix d = dilate(a);
  const double norm_d = schatten_norm(d.mat, p);
  const double twice = 2.0 * schatten_norm(a, p);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(d.mat, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues()(0);
  const double s = scale(a);

  report.add_quantity("dilation_norm", norm_d);
  report.add_quantity("twice_norm", twice);
  report.add_quantity("min_eigenvalue", min_eig);
  report.quantities["dilation_is_positive"] = is_positive(d.mat);
  const double relative = twice > 0.0 ? std::abs(norm_d - twice) / twice : std::abs(norm_d);
  report.add_residual("relative_doubling", relative, 1e-10);
  report.add_residual("psd_violation", std::max(0.0, -min_eig) / s, 1e-11);
  report.finalize();
  return report;
}

}  // namespace opsys
