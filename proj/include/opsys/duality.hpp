#pragma once

// Parallel and trace duality pairings on M_n(M_m), the opposite matrix
// order, and the flip [phi_ij] -> [phi_ji].

#include "opsys/schatten.hpp"

#include <functional>
#include <vector>

namespace opsys {

/// phi = [phi_ij] with phi_ij(a) = tr(R_ij a), reps stored row-major (i * outer + j).
struct BlockFunctional {
  Eigen::Index outer = 1;
  Eigen::Index inner = 1;
  std::vector<ComplexMatrix> reps;

  BlockFunctional() = default;
  /// Throws DimensionMismatch unless there are outer^2 reps of size inner x inner.
  BlockFunctional(Eigen::Index outer, Eigen::Index inner, std::vector<ComplexMatrix> reps);

  const ComplexMatrix& rep(Eigen::Index i, Eigen::Index j) const { return reps[i * outer + j]; }
  ComplexMatrix& rep(Eigen::Index i, Eigen::Index j) { return reps[i * outer + j]; }
};

/// sum_ij tr(R_ij x_ij).
Complex parallel_pair(const BlockFunctional& phi, const AmplifiedElement& x);

/// sum_ij tr(a_ij b_ji) = tr(A B).
Complex trace_pair_matrix(const AmplifiedElement& a, const AmplifiedElement& b);

/// [phi_ji].
BlockFunctional flip(const BlockFunctional& phi);

/// [x_ji] with the inner blocks untouched.
AmplifiedElement outer_transpose(const AmplifiedElement& x);

/// phi^*(x) = conj(phi(x^*)), i.e. R_ij -> R_ji^*.
BlockFunctional involution(const BlockFunctional& phi);

/// The nm x nm matrix Q with phi(x) = tr(Q x) for every x, i.e. Q_ji = R_ij.
ComplexMatrix representing_matrix(const BlockFunctional& phi);

/// Inverse of representing_matrix.
BlockFunctional from_representing_matrix(const ComplexMatrix& q, Eigen::Index outer,
                                         Eigen::Index inner);

/// Positive on M_n(M_m)_+ iff the representing matrix is PSD.
bool is_positive_functional(const BlockFunctional& phi, double tol = kDefaultTol);

/// x is positive in M_n(X^op) iff outer_transpose(x) is PSD.
bool is_op_positive(const AmplifiedElement& x, double tol = kDefaultTol);

/// Matrix Q with psi(x) = tr(Q x), obtained by evaluating psi on matrix units.
ComplexMatrix probe_representing_matrix(
    const std::function<Complex(const ComplexMatrix&)>& psi, Eigen::Index dim);

}  // namespace opsys
