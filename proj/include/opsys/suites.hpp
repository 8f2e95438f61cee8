#pragma once

// Seeded verification suites driven by the CLI. Each case draws its inputs
// from a generator seeded by (seed, suite, case index), so results do not
// depend on evaluation order or on the number of worker threads.

#include "opsys/report.hpp"
#include "opsys/schatten.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace opsys {

struct SuiteOptions {
  std::uint64_t seed = 0;
  int count = 20;
  std::vector<double> p_grid = {1.0, 1.5, 2.0, 3.0, 7.3};
  int jobs = 1;
  int restarts = 8;
  // Relative rank tolerance for polar forms and spectral clustering; < 0 selects the default.
  double rank_tol = -1.0;
  bool timing = false;
};

/// Suites in the order "all" runs them.
const std::vector<std::string>& suite_names();

bool is_suite_name(std::string_view name);

/// Runs one suite, or every suite for "all". Reports are ordered by
/// (suite, case index, p). Throws Error(Parse) for an unknown suite name.
std::vector<VerificationReport> run_suite(std::string_view suite, const SuiteOptions& options);

/// Random square test input for a case: sizes 1..max_n, with rank-deficient
/// (possibly zero) matrices mixed in.
ComplexMatrix case_matrix(std::uint64_t seed, std::string_view stream, std::uint64_t index,
                          Eigen::Index max_n = 6);

}  // namespace opsys
