#include "opsys/random.hpp"

#include "opsys/error.hpp"

#include <string>
#include <vector>

namespace opsys {

std::uint64_t derive_seed(std::uint64_t base, std::string_view stream, std::uint64_t index) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(base),
                                   static_cast<std::uint32_t>(base >> 32),
                                   static_cast<std::uint32_t>(index),
                                   static_cast<std::uint32_t>(index >> 32)};
  for (char c : stream) words.push_back(static_cast<unsigned char>(c));
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  // Fill in a fixed order so the stream consumption does not depend on Eigen.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  return hermitian_part(ginibre(n, n, rng));
}

ComplexMatrix random_psd(Eigen::Index n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  return hermitian_part(g * g.adjoint());
}

ComplexMatrix random_rank_deficient(Eigen::Index n, Eigen::Index rank, Rng& rng) {
  const ComplexMatrix g = ginibre(n, rank, rng);
  const ComplexMatrix h = ginibre(n, rank, rng);
  return g * h.adjoint();
}

ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

MatrixKind parse_matrix_kind(std::string_view name) {
  if (name == "ginibre") return MatrixKind::Ginibre;
  if (name == "hermitian") return MatrixKind::Hermitian;
  if (name == "psd") return MatrixKind::Psd;
  if (name == "rankdef") return MatrixKind::RankDeficient;
  throw Error(ErrorCode::Parse, "unknown matrix kind '" + std::string(name) + "'");
}

ComplexMatrix generate(MatrixKind kind, Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  switch (kind) {
    case MatrixKind::Ginibre: return ginibre(n, n, rng);
    case MatrixKind::Hermitian: return random_hermitian(n, rng);
    case MatrixKind::Psd: return random_psd(n, rng);
    case MatrixKind::RankDeficient: return random_rank_deficient(n, (n + 1) / 2, rng);
  }
  return ComplexMatrix();
}

}  // namespace opsys
