#pragma once

#include "opsys/linalg.hpp"
#include "opsys/random.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace testing_support {

using opsys::Complex;
using opsys::ComplexMatrix;

inline double diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return opsys::operator_norm(a - b);
}

inline opsys::Rng rng_for(std::string_view stream, std::uint64_t index = 0) {
  return opsys::Rng(opsys::derive_seed(20240611, stream, index));
}

inline ComplexMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix d = ComplexMatrix::Zero(values.size(), values.size());
  Eigen::Index i = 0;
  for (double v : values) d(i, i) = v, ++i;
  return d;
}

inline ComplexMatrix real_matrix(Eigen::Index rows, Eigen::Index cols, std::vector<double> entries) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = entries[i * cols + j];
  return m;
}

/// Random square matrix of size 1..max_n, rank-deficient every third draw.
inline ComplexMatrix sample_square(opsys::Rng& rng, Eigen::Index max_n, int index) {
  const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % max_n);
  if (index % 3 == 1) return opsys::random_rank_deficient(n, n / 2, rng);
  return opsys::ginibre(n, n, rng);
}

inline const std::vector<double>& p_grid() {
  static const std::vector<double> grid = {1.0, 1.5, 2.0, 3.0, 7.3};
  return grid;
}

}  // namespace testing_support
