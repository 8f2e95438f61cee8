#include "opsys/suites.hpp"

#include "opsys/dilation.hpp"
#include "opsys/duality.hpp"
#include "opsys/error.hpp"
#include "opsys/radius.hpp"
#include "opsys/random.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace opsys {

namespace {

using Task = std::function<VerificationReport()>;

struct NamedFunction {
  const char* name;
  ScalarFunction f;
};

const std::vector<NamedFunction>& calculus_functions() {
  static const std::vector<NamedFunction> fs = {
      {"square", [](double t) { return t * t; }},
      {"cube", [](double t) { return t * t * t; }},
      {"sqrt", [](double t) { return std::sqrt(t); }},
      {"t_over_1_plus_t", [](double t) { return t / (1.0 + t); }},
      {"t_exp_minus_t", [](double t) { return t * std::exp(-t); }},
  };
  return fs;
}

VerificationReport annotate(VerificationReport report, std::string_view suite, std::uint64_t index,
                            std::uint64_t seed) {
  Json inputs = Json::object();
  inputs["suite"] = std::string(suite);
  inputs["case"] = index;
  inputs["seed"] = seed;
  for (const auto& [key, value] : report.inputs.items()) inputs[key] = value;
  report.inputs = std::move(inputs);
  return report;
}

double op_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return operator_norm(a - b); }

VerificationReport calculus_case(const ComplexMatrix& a) {
  VerificationReport report;
  report.check_name = "calculus";
  report.set_input("n", a.rows());
  const double s = scale(a);
  for (const auto& [name, f] : calculus_functions()) {
    const ComplexMatrix direct = dilation_calculus_direct(a, f);
    const ComplexMatrix formula = dilation_calculus(a, f);
    const double diff = op_diff(direct, formula);
    report.add_residual(name, diff / s, 1e-9);
    // Same difference relative to the size of f(D(a)/2) itself.
    report.add_quantity(std::string(name) + "_output_relative", diff / std::max(scale(direct), scale(formula)));
  }
  report.finalize();
  return report;
}

VerificationReport power_case(const ComplexMatrix& a) {
  VerificationReport report;
  report.check_name = "power";
  report.set_input("n", a.rows());
  const double s = scale(a);
  const ComplexMatrix d = dilate(a).mat;
  ComplexMatrix direct = ComplexMatrix::Identity(d.rows(), d.cols());
  for (int k = 1; k <= 6; ++k) {
    direct = direct * d;
    report.add_residual("k" + std::to_string(k), op_diff(dilation_power(a, k), direct) / std::pow(s, k),
                        1e-9);
  }
  // a |a|^k = |a*|^k a.
  const PolarForm pf = polar(a);
  double intertwining = 0.0;
  for (int k = 1; k <= 4; ++k) {
    intertwining = std::max(intertwining, op_diff(a * matrix_power(pf.absA, k),
                                                  matrix_power(pf.absAstar, k) * a) /
                                              std::pow(s, k + 1));
  }
  report.add_residual("intertwining", intertwining, 1e-9);
  report.finalize();
  return report;
}

VerificationReport spectral_case(const ComplexMatrix& a, double rank_tol) {
  VerificationReport report;
  report.check_name = "spectral";
  const Eigen::Index n = a.rows();
  report.set_input("n", n);
  const DilationSpectralMeasure mu = dilation_spectral_measure(a, rank_tol);
  const Eigen::Index dim = 2 * n;
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);

  std::vector<ComplexMatrix> projections;
  for (const auto& atom : mu.atoms) projections.push_back(atom.projection);
  projections.push_back(mu.zero_atom);

  double idempotent = 0.0;
  double orthogonal = 0.0;
  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < projections.size(); ++i) {
    const ComplexMatrix& p = projections[i];
    idempotent = std::max({idempotent, op_diff(p * p, p), op_diff(p, p.adjoint())});
    for (std::size_t j = i + 1; j < projections.size(); ++j) {
      orthogonal = std::max(orthogonal, operator_norm(p * projections[j]));
    }
    total += p;
  }
  const ComplexMatrix half_dilation = 0.5 * dilate(a).mat;
  const double s = scale(a);

  // Multiplicativity over all intervals with endpoints in {0} u atoms.
  std::vector<double> points{0.0};
  for (const auto& atom : mu.atoms) points.push_back(atom.eigenvalue);
  double multiplicative = 0.0;
  for (std::size_t i1 = 0; i1 < points.size(); ++i1) {
    for (std::size_t j1 = i1; j1 < points.size(); ++j1) {
      const ComplexMatrix m1 = mu.measure(points[i1], points[j1]);
      for (std::size_t i2 = 0; i2 < points.size(); ++i2) {
        for (std::size_t j2 = i2; j2 < points.size(); ++j2) {
          const double lo = std::max(points[i1], points[i2]);
          const double hi = std::min(points[j1], points[j2]);
          const ComplexMatrix inter =
              lo <= hi ? mu.measure(lo, hi) : ComplexMatrix::Zero(dim, dim);
          multiplicative =
              std::max(multiplicative, op_diff(m1 * mu.measure(points[i2], points[j2]), inter));
        }
      }
    }
  }

  // The positive-part measure carries no mass at zero: with E({0}) = I - v^*v,
  // (1/2)[[v E v^*, v E], [E v^*, v^*v E]] vanishes.
  const PolarForm pf = polar(a, rank_tol);
  const ComplexMatrix kernel = ComplexMatrix::Identity(n, n) - pf.v.adjoint() * pf.v;
  const ComplexMatrix ve = pf.v * kernel;
  const ComplexMatrix positive_at_zero =
      0.5 * assemble_blocks(ve * pf.v.adjoint(), ve, ve.adjoint(), pf.v.adjoint() * pf.v * kernel);

  report.set_input("rank", pf.rank);
  report.add_quantity("atoms", static_cast<double>(mu.atoms.size()));
  report.add_quantity("zero_atom_trace", mu.zero_atom.trace().real());
  report.add_residual("idempotent", idempotent, 1e-9);
  report.add_residual("orthogonal", orthogonal, 1e-9);
  report.add_residual("complete", op_diff(total, id), 1e-9);
  report.add_residual("reconstruction", op_diff(mu.reconstruct(), half_dilation) / s, 1e-9);
  report.add_residual("multiplicative", multiplicative, 1e-9);
  report.add_residual("zero_atom_trace",
                      std::abs(mu.zero_atom.trace().real() - static_cast<double>(2 * n - pf.rank)),
                      1e-9);
  report.add_residual("no_positive_mass_at_zero", operator_norm(positive_at_zero), 1e-9);

  // Truncation a_t = a E([0, t]) at the median atom: (1/2) D(a) E~([0, t]) = (1/2) D(a_t).
  if (!mu.atoms.empty()) {
    const double t = mu.atoms[mu.atoms.size() / 2].eigenvalue;
    const SvdForm sv = svd(a);
    ComplexMatrix low = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (sv.singular(i) <= t * (1.0 + 1e-12)) low += sv.right.col(i) * sv.right.col(i).adjoint();
    }
    const ComplexMatrix truncated = a * low;
    report.add_residual("truncation",
                        op_diff(half_dilation * mu.measure(0.0, t), 0.5 * dilate(truncated).mat) / s,
                        1e-9);
  }
  report.finalize();
  return report;
}

VerificationReport duality_case(std::uint64_t seed, std::uint64_t index,
                                const std::vector<double>& p_grid) {
  Rng rng(derive_seed(seed, "duality", index));
  const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 3);
  const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 2);
  const Eigen::Index dim = n * m;

  ComplexMatrix q;
  switch (index % 3) {
    case 0: q = random_psd(dim, rng); break;
    case 1: q = random_hermitian(dim, rng); break;
    default: q = ginibre(dim, dim, rng); break;
  }
  const BlockFunctional phi = from_representing_matrix(q, n, m);
  const AmplifiedElement x(n, m, ginibre(dim, dim, rng));
  const AmplifiedElement y(n, m, ginibre(dim, dim, rng));

  VerificationReport report;
  report.check_name = "duality";
  report.set_input("n", n);
  report.set_input("m", m);

  const Complex direct = parallel_pair(phi, x);
  const Complex flipped = parallel_pair(flip(phi), outer_transpose(x));
  report.add_residual("flip_identity", std::abs(direct - flipped) / std::max(1.0, std::abs(direct)),
                      1e-12);

  const Complex pairing = trace_pair_matrix(x, y);
  const Complex full = (x.mat * y.mat).trace();
  report.add_residual("trace_pairing", std::abs(pairing - full) / std::max(1.0, std::abs(full)),
                      1e-12);

  // phi positive on the standard cone vs flip(phi) positive on the op cone,
  // the latter read off by probing psi(X) = flip(phi)(outer_transpose(X)).
  const bool standard = is_positive_functional(phi);
  const BlockFunctional flipped_phi = flip(phi);
  const ComplexMatrix probed = probe_representing_matrix(
      [&](const ComplexMatrix& unit) {
        return parallel_pair(flipped_phi, outer_transpose(AmplifiedElement(n, m, unit)));
      },
      dim);
  const bool op = is_positive(probed);
  report.quantities["positive"] = standard;
  report.add_residual("positivity_mismatch", standard == op ? 0.0 : 1.0, 0.0);

  const BlockFunctional star = involution(phi);
  const Complex star_value = parallel_pair(star, x);
  const Complex expected_star =
      std::conj(parallel_pair(phi, AmplifiedElement(n, m, x.mat.adjoint())));
  report.add_residual("involution",
                      std::abs(star_value - expected_star) / std::max(1.0, std::abs(expected_star)),
                      1e-12);

  // Hoelder on the flattened pair.
  double holder = 0.0;
  for (double pv : p_grid) {
    const Exponent p(pv);
    const double bound = schatten_norm(x.mat, p) * schatten_norm(y.mat, dual_exponent(p));
    holder = std::max(holder, std::abs(trace_pair(y.mat, x.mat)) - bound);
  }
  report.add_residual("holder", std::max(0.0, holder), 1e-10);
  report.finalize();
  return report;
}

std::vector<Task> build_tasks(std::string_view suite, const SuiteOptions& options) {
  std::vector<Task> tasks;
  const auto seed = options.seed;
  const auto count = static_cast<std::uint64_t>(options.count);
  const double rank_tol = options.rank_tol;
  std::string name(suite);

  if (suite == "doubling" || suite == "theorem") {
    for (std::uint64_t i = 0; i < count; ++i) {
      for (double pv : options.p_grid) {
        tasks.push_back([=, restarts = options.restarts]() {
          const ComplexMatrix a = case_matrix(seed, name, i);
          const Exponent p(pv);
          if (name == "doubling") return annotate(dilation_norm_check(a, p), name, i, seed);
          TheoremOptions t;
          t.oracle.restarts = restarts;
          t.oracle.seed = derive_seed(seed, "oracle", i);
          return annotate(verify_theorem(a, p, t), name, i, seed);
        });
      }
    }
  } else if (suite == "tightness") {
    for (std::size_t k = 0; k < options.p_grid.size(); ++k) {
      tasks.push_back([=, pv = options.p_grid[k]]() {
        return annotate(tightness_example(Exponent(pv)), name, k, seed);
      });
    }
  } else {
    for (std::uint64_t i = 0; i < count; ++i) {
      tasks.push_back([=, grid = options.p_grid]() {
        if (name == "duality") return annotate(duality_case(seed, i, grid), name, i, seed);
        const ComplexMatrix a = case_matrix(seed, name, i);
        if (name == "calculus") return annotate(calculus_case(a), name, i, seed);
        if (name == "power") return annotate(power_case(a), name, i, seed);
        return annotate(spectral_case(a, rank_tol), name, i, seed);
      });
    }
  }
  return tasks;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"calculus", "power",     "spectral", "doubling",
                                                 "theorem",  "tightness", "duality"};
  return names;
}

bool is_suite_name(std::string_view name) {
  if (name == "all") return true;
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

ComplexMatrix case_matrix(std::uint64_t seed, std::string_view stream, std::uint64_t index,
                          Eigen::Index max_n) {
  Rng rng(derive_seed(seed, stream, index));
  const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(max_n));
  switch (index % 3) {
    case 0: return ginibre(n, n, rng);
    case 1: return random_rank_deficient(n, n / 2, rng);
    default: {
      std::uniform_real_distribution<double> log_scale(-2.0, 2.0);
      return std::pow(10.0, log_scale(rng)) * ginibre(n, n, rng);
    }
  }
}

std::vector<VerificationReport> run_suite(std::string_view suite, const SuiteOptions& options) {
  if (!is_suite_name(suite)) {
    throw Error(ErrorCode::Parse, "unknown suite '" + std::string(suite) + "'");
  }
  std::vector<Task> tasks;
  if (suite == "all") {
    for (const auto& name : suite_names()) {
      auto more = build_tasks(name, options);
      std::move(more.begin(), more.end(), std::back_inserter(tasks));
    }
  } else {
    tasks = build_tasks(suite, options);
  }

  std::vector<VerificationReport> reports(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        reports[i] = tasks[i]();
      } catch (const std::exception& e) {
        VerificationReport failed;
        failed.check_name = "error";
        failed.set_input("what", e.what());
        failed.add_residual("exception", std::numeric_limits<double>::infinity(), 0.0);
        failed.finalize();
        reports[i] = std::move(failed);
      }
      if (options.timing) {
        const std::chrono::duration<double, std::milli> elapsed =
            std::chrono::steady_clock::now() - start;
        reports[i].elapsed_ms = elapsed.count();
      }
    }
  };
  const int jobs = std::max(1, options.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return reports;
}

}  // namespace opsys
