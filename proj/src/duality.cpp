#include "opsys/duality.hpp"

#include "opsys/error.hpp"

namespace opsys {

namespace {

void require_match(const BlockFunctional& phi, const AmplifiedElement& x) {
  if (phi.outer != x.outer || phi.inner != x.inner) {
    throw Error(ErrorCode::DimensionMismatch, "functional and element differ in block structure");
  }
}

}  // namespace

BlockFunctional::BlockFunctional(Eigen::Index outer_, Eigen::Index inner_,
                                 std::vector<ComplexMatrix> reps_)
    : outer(outer_), inner(inner_), reps(std::move(reps_)) {
  if (static_cast<Eigen::Index>(reps.size()) != outer * outer) {
    throw Error(ErrorCode::DimensionMismatch, "block functional needs outer^2 entries");
  }
  for (const auto& r : reps) {
    if (r.rows() != inner || r.cols() != inner) {
      throw Error(ErrorCode::DimensionMismatch, "block functional entry has the wrong size");
    }
  }
}

Complex parallel_pair(const BlockFunctional& phi, const AmplifiedElement& x) {
  require_match(phi, x);
  Complex sum = 0.0;
  for (Eigen::Index i = 0; i < phi.outer; ++i) {
    for (Eigen::Index j = 0; j < phi.outer; ++j) {
      sum += (phi.rep(i, j) * x.block(i, j)).trace();
    }
  }
  return sum;
}

Complex trace_pair_matrix(const AmplifiedElement& a, const AmplifiedElement& b) {
  if (a.outer != b.outer || a.inner != b.inner) {
    throw Error(ErrorCode::DimensionMismatch, "trace pairing operands differ in block structure");
  }
  Complex sum = 0.0;
  for (Eigen::Index i = 0; i < a.outer; ++i) {
    for (Eigen::Index j = 0; j < a.outer; ++j) {
      sum += (a.block(i, j) * b.block(j, i)).trace();
    }
  }
  return sum;
}

BlockFunctional flip(const BlockFunctional& phi) {
  BlockFunctional out = phi;
  for (Eigen::Index i = 0; i < phi.outer; ++i) {
    for (Eigen::Index j = 0; j < phi.outer; ++j) out.rep(i, j) = phi.rep(j, i);
  }
  return out;
}

AmplifiedElement outer_transpose(const AmplifiedElement& x) {
  AmplifiedElement out = x;
  const Eigen::Index m = x.inner;
  for (Eigen::Index i = 0; i < x.outer; ++i) {
    for (Eigen::Index j = 0; j < x.outer; ++j) {
      out.mat.block(i * m, j * m, m, m) = x.block(j, i);
    }
  }
  return out;
}

BlockFunctional involution(const BlockFunctional& phi) {
  BlockFunctional out = phi;
  for (Eigen::Index i = 0; i < phi.outer; ++i) {
    for (Eigen::Index j = 0; j < phi.outer; ++j) out.rep(i, j) = phi.rep(j, i).adjoint();
  }
  return out;
}

ComplexMatrix representing_matrix(const BlockFunctional& phi) {
  const Eigen::Index m = phi.inner;
  ComplexMatrix q(phi.outer * m, phi.outer * m);
  for (Eigen::Index i = 0; i < phi.outer; ++i) {
    for (Eigen::Index j = 0; j < phi.outer; ++j) q.block(j * m, i * m, m, m) = phi.rep(i, j);
  }
  return q;
}

BlockFunctional from_representing_matrix(const ComplexMatrix& q, Eigen::Index outer,
                                         Eigen::Index inner) {
  if (q.rows() != outer * inner || q.cols() != outer * inner) {
    throw Error(ErrorCode::DimensionMismatch, "representing matrix has the wrong size");
  }
  std::vector<ComplexMatrix> reps(static_cast<std::size_t>(outer * outer));
  for (Eigen::Index i = 0; i < outer; ++i) {
    for (Eigen::Index j = 0; j < outer; ++j) {
      reps[static_cast<std::size_t>(i * outer + j)] = q.block(j * inner, i * inner, inner, inner);
    }
  }
  return BlockFunctional(outer, inner, std::move(reps));
}

bool is_positive_functional(const BlockFunctional& phi, double tol) {
  return is_positive(representing_matrix(phi), tol);
}

bool is_op_positive(const AmplifiedElement& x, double tol) {
  return is_positive(outer_transpose(x).mat, tol);
}

ComplexMatrix probe_representing_matrix(
    const std::function<Complex(const ComplexMatrix&)>& psi, Eigen::Index dim) {
  // tr(Q E_kl) = Q_lk.
  ComplexMatrix q(dim, dim);
  ComplexMatrix unit = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index l = 0; l < dim; ++l) {
      unit(k, l) = 1.0;
      q(l, k) = psi(unit);
      unit(k, l) = 0.0;
    }
  }
  return q;
}

}  // namespace opsys
