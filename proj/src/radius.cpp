#include "opsys/radius.hpp"

#include "opsys/dilation.hpp"
#include "opsys/error.hpp"
#include "opsys/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opsys {

double StateFunctional::psd_violation() const {
  if (b.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(b), Eigen::EigenvaluesOnly);
  const double asym = operator_norm(b - b.adjoint());
  return std::max({0.0, -solver.eigenvalues()(0), asym});
}

double StateFunctional::norm_excess() const { return std::max(0.0, schatten_norm(b, q) - 1.0); }

bool StateFunctional::is_feasible(double tol) const {
  return psd_violation() <= tol && norm_excess() <= tol;
}

double StateFunctional::evaluate(const ComplexMatrix& h) const { return (b * h).trace().real(); }

double radius_prefactor(const Exponent& p) { return std::pow(2.0, -p.inverse()); }

double nu_p(const ComplexMatrix& x, const Exponent& p) {
  require_square(x, "nu_p");
  const ComplexMatrix positive_part =
      hermitian_fun_calc(off_diagonal(x), [](double t) { return std::max(t, 0.0); });
  return radius_prefactor(p) * schatten_norm(positive_part, p);
}

BruteforceResult nu_p_bruteforce(const ComplexMatrix& x, const Exponent& p,
                                 const BruteforceOptions& options) {
  require_square(x, "nu_p_bruteforce");
  const ComplexMatrix h = off_diagonal(x);
  const Exponent q = dual_exponent(p);
  const Eigen::Index dim = h.rows();

  BruteforceResult best;
  best.witness = StateFunctional{ComplexMatrix::Zero(dim, dim), q};
  double best_objective = 0.0;
  const double lipschitz = h.norm();
  if (lipschitz == 0.0) return best;

  const int restarts = std::max(1, options.restarts);
  for (int r = 0; r < restarts; ++r) {
    ComplexMatrix b = ComplexMatrix::Zero(dim, dim);
    if (r > 0) {
      Rng rng(derive_seed(options.seed, "bruteforce", static_cast<std::uint64_t>(r)));
      b = project_psd_schatten_ball(random_psd(dim, rng), q);
    }
    double value = (b * h).trace().real();
    double eta = 1.0 / lipschitz;
    for (int it = 0; it < options.iters; ++it) {
      const ComplexMatrix cand = project_psd_schatten_ball(b + eta * h, q);
      const double v = (cand * h).trace().real();
      if (v > value) {
        const double gain = v - value;
        b = cand;
        value = v;
        eta *= 2.0;
        if (gain <= options.step_tol * std::max(1.0, std::abs(value))) break;
      } else {
        eta *= 0.5;
        if (eta * lipschitz < 1e-12) break;
      }
    }
    StateFunctional witness{b, q};
    const double excess = schatten_norm(witness.b, q);
    if (excess > 1.0) witness.b /= excess;
    const double objective = witness.evaluate(h);
    if (objective > best_objective) {
      best_objective = objective;
      best.witness = std::move(witness);
    }
  }
  best.value = radius_prefactor(p) * best_objective;
  return best;
}

StateFunctional witness_functional(const ComplexMatrix& x, const Exponent& p) {
  require_square(x, "witness_functional");
  const ComplexMatrix c = norming_functional(x, p);
  return StateFunctional{0.5 * dilate(c).mat, dual_exponent(p)};
}

VerificationReport verify_theorem(const ComplexMatrix& x, const Exponent& p,
                                  const TheoremOptions& options) {
  require_square(x, "verify_theorem");
  VerificationReport report;
  report.check_name = "theorem";
  report.set_input("n", x.rows());
  report.set_input("p", exponent_value(p.p()));

  const double prefactor = radius_prefactor(p);
  const double norm = schatten_norm(x, p);
  const double nu = nu_p(x, p);
  const ComplexMatrix h = off_diagonal(x);
  const double off_norm = schatten_norm(h, p);

  report.add_quantity("norm", norm);
  report.add_quantity("nu", nu);
  report.add_quantity("lower_bound", prefactor * norm);
  report.add_quantity("holder_upper", prefactor * off_norm);
  report.add_quantity("ratio", nu > 0.0 ? norm / nu : 0.0);
  // Derived observation: in this model the two bounds coincide.
  report.add_quantity("sandwich_gap", nu - prefactor * norm);

  report.add_residual("chain_lower", std::max(0.0, prefactor * norm - nu), 1e-10);
  report.add_residual("chain_upper", std::max(0.0, nu - norm), 1e-10);
  const double expected_off = norm / prefactor;
  report.add_residual("off_diagonal_norm",
                      std::abs(off_norm - expected_off) / std::max(1.0, expected_off), 1e-10);

  if (norm > 0.0 && !p.is_infinite()) {
    const StateFunctional w = witness_functional(x, p);
    const double pairing = w.evaluate(h);
    report.add_quantity("witness_pairing", pairing);
    report.add_quantity("witness_lower", prefactor * pairing);
    report.add_residual("witness_psd", w.psd_violation(), 1e-10);
    report.add_residual("witness_norm_excess", w.norm_excess(), 1e-10);
    report.add_residual("witness_attainment", std::abs(pairing - norm), 1e-9);
    report.add_residual("witness_above_nu", std::max(0.0, prefactor * pairing - nu), 1e-10);
  }

  if (options.run_oracle) {
    const BruteforceResult oracle = nu_p_bruteforce(x, p, options.oracle);
    report.add_quantity("oracle_lower", oracle.value);
    report.add_residual("oracle_feasibility",
                        std::max(oracle.witness.psd_violation(), oracle.witness.norm_excess()),
                        1e-12);
    report.add_residual("oracle_above_nu", std::max(0.0, oracle.value - nu), 1e-9);
    const double gap = std::max(0.0, nu - oracle.value);
    report.add_quantity("oracle_gap", gap);
    if (x.rows() <= options.oracle_gap_max_n) report.add_residual("oracle_gap", gap, 1e-4);
  }
  report.finalize();
  return report;
}

ComplexMatrix tightness_pattern() {
  ComplexMatrix k = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if ((i - j) % 2 == 0) k(i, j) = 1.0;
    }
  }
  return k;
}

VerificationReport tightness_example(const Exponent& p) {
  VerificationReport report;
  report.check_name = "tightness";
  report.set_input("n", 2);
  report.set_input("p", exponent_value(p.p()));

  const Exponent q = dual_exponent(p);
  const double constant = std::pow(2.0, p.inverse());
  const ComplexMatrix x = ComplexMatrix::Identity(2, 2);
  const double norm = schatten_norm(x, p);
  const double nu = nu_p(x, p);
  report.add_quantity("norm", norm);
  report.add_quantity("nu", nu);
  report.add_quantity("ratio", norm / nu);
  report.add_quantity("constant", constant);
  report.add_residual("norm_exact", std::abs(norm - constant), 0.0);
  report.add_residual("radius_one", std::abs(nu - 1.0), 1e-9);
  report.add_residual("ratio", std::abs(norm / nu - constant), 1e-9);

  const ComplexMatrix pattern = tightness_pattern();
  const double pattern_norm = schatten_norm(pattern, p);
  report.add_quantity("pattern_norm", pattern_norm);
  report.add_residual("pattern_norm", std::abs(pattern_norm - 2.0 * constant), 1e-12);

  // Replay the certificate on sampled functionals with the sparsity pattern
  // of the pattern matrix, normalized into the unit ball of S_q^4.
  const ComplexMatrix j = off_diagonal(x);
  const ComplexMatrix complement = ComplexMatrix::Identity(4, 4) - j;
  Rng rng(derive_seed(0, "tightness", 0));
  double upper_violation = 0.0;
  double lower_violation = 0.0;
  double chain_violation = 0.0;
  double positivity_violation = 0.0;
  double best_pairing = -std::numeric_limits<double>::infinity();
  constexpr int kSamples = 256;
  for (int s = 0; s < kSamples; ++s) {
    ComplexMatrix f = ComplexMatrix::Zero(4, 4);
    for (int offset = 0; offset < 2; ++offset) {
      const ComplexMatrix block = random_psd(2, rng);
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) f(offset + 2 * r, offset + 2 * c) = block(r, c);
      }
    }
    f /= schatten_norm(f, q);
    const double pairing = (f * j).trace().real();
    const double half_pattern = 0.5 * (f * pattern).trace().real();
    best_pairing = std::max(best_pairing, pairing);
    upper_violation = std::max(upper_violation, pairing - constant);
    lower_violation = std::max(lower_violation, -constant - pairing);
    chain_violation = std::max({chain_violation, pairing - half_pattern,
                                half_pattern - 0.5 * pattern_norm});
    positivity_violation = std::max(positivity_violation, -(f * complement).trace().real());
  }
  report.add_quantity("sampled_max_pairing", best_pairing);
  report.add_residual("certificate_upper", std::max(0.0, upper_violation), 1e-12);
  report.add_residual("certificate_lower", std::max(0.0, lower_violation), 1e-12);
  report.add_residual("certificate_chain", std::max(0.0, chain_violation), 1e-12);
  report.add_residual("certificate_positivity", std::max(0.0, positivity_violation), 1e-12);

  const StateFunctional extremal{pattern / schatten_norm(pattern, q), q};
  const double extremal_pairing = extremal.evaluate(j);
  report.add_quantity("extremal_pairing", extremal_pairing);
  report.add_residual("extremal_attainment", std::abs(extremal_pairing - constant), 1e-12);
  report.add_residual("extremal_feasibility",
                      std::max(extremal.psd_violation(), extremal.norm_excess()), 1e-12);
  report.finalize();
  return report;
}

namespace {

// P_+^(p-1) of the off-diagonal dilation of y, normalized into the S_q ball:
// the functional attaining nu_p(y).
ComplexMatrix optimal_state(const ComplexMatrix& y, const Exponent& p) {
  const SpectralForm eig = hermitian_eig(off_diagonal(y));
  const Eigen::Index dim = eig.eigenvalues.size();
  const double top = eig.eigenvalues(dim - 1);
  RealVector w = RealVector::Zero(dim);
  if (top > 0.0) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double ratio = std::max(eig.eigenvalues(i), 0.0) / top;
      if (p.is_infinite()) {
        w(i) = i == dim - 1 ? 1.0 : 0.0;
      } else if (p.is_one()) {
        w(i) = ratio > 1e-14 ? 1.0 : 0.0;
      } else {
        w(i) = std::pow(ratio, p.p() - 1.0);
      }
    }
  }
  ComplexMatrix b = hermitian_part(eig.vectors * w.cast<Complex>().asDiagonal() *
                                   eig.vectors.adjoint());
  const double norm = schatten_norm(b, dual_exponent(p));
  if (norm > 0.0) b /= norm;
  return b;
}

}  // namespace

ScaledRadiusResult scaled_radius_lower(const AmplifiedElement& x, const Exponent& p,
                                       const MnormOptions& options) {
  const Eigen::Index n = x.outer;
  const Eigen::Index m = x.inner;
  const Exponent ball(p.is_infinite() ? std::numeric_limits<double>::infinity() : 2.0 * p.p());

  CompressionObjective objective{
      [&p](const ComplexMatrix& y) { return nu_p(y, p); },
      [&p, n, m](const ComplexMatrix& y) {
        const ComplexMatrix state = optimal_state(y, p);
        return ComplexMatrix(state.topRightCorner(n * m, n * m));
      }};

  ScaledRadiusResult result;
  result.min_compressed_eigenvalue = std::numeric_limits<double>::infinity();
  auto observe = [&](const ComplexMatrix& a, const ComplexMatrix& b) {
    const ComplexMatrix c = direct_sum(a, b.adjoint());
    result.max_compression_norm = std::max(result.max_compression_norm, schatten_norm(c, ball));
    const ComplexMatrix ci = kron_identity(c, m);
    const ComplexMatrix compressed = ci.adjoint() * optimal_state(compress(x, a, b), p) * ci;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(compressed),
                                                        Eigen::EigenvaluesOnly);
    result.min_compressed_eigenvalue =
        std::min(result.min_compressed_eigenvalue, solver.eigenvalues()(0) / scale(compressed));
  };

  const MnormEstimate best = maximize_over_compressions(x, p, objective, options, observe);
  result.value = best.lower_bound;
  result.a = best.a;
  result.b = best.b;
  return result;
}

}  // namespace opsys
