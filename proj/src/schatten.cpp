#include "opsys/schatten.hpp"

#include "opsys/error.hpp"
#include "opsys/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace opsys {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string shortest_repr(double value) {
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

}  // namespace

Exponent::Exponent(double p) : p_(p), q_(0.0) {
  if (std::isnan(p) || p < 1.0) {
    throw Error(ErrorCode::InvalidExponent, "exponent must lie in [1, inf], got " + shortest_repr(p));
  }
  if (p == 1.0) {
    q_ = kInf;
  } else if (std::isinf(p)) {
    q_ = 1.0;
  } else {
    q_ = p / (p - 1.0);
  }
}

Exponent Exponent::infinity() { return Exponent(kInf); }

Exponent Exponent::parse(std::string_view text) {
  std::string s(text);
  if (s == "inf" || s == "Inf" || s == "infinity") return infinity();
  char* end = nullptr;
  const double value = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::InvalidExponent, "cannot parse exponent '" + s + "'");
  }
  return Exponent(value);
}

bool Exponent::is_infinite() const noexcept { return std::isinf(p_); }

double Exponent::inverse() const noexcept { return is_infinite() ? 0.0 : 1.0 / p_; }

std::string Exponent::to_string() const { return is_infinite() ? "inf" : shortest_repr(p_); }

Exponent dual_exponent(const Exponent& p) { return Exponent(p.q()); }

AmplifiedElement::AmplifiedElement(Eigen::Index outer_, Eigen::Index inner_, ComplexMatrix mat_)
    : outer(outer_), inner(inner_), mat(std::move(mat_)) {
  if (outer < 1 || inner < 1 || mat.rows() != outer * inner || mat.cols() != outer * inner) {
    throw Error(ErrorCode::DimensionMismatch, "amplified element must be (n*m) x (n*m)");
  }
}

AmplifiedElement single_block(Eigen::Index outer, Eigen::Index i, Eigen::Index j,
                              const ComplexMatrix& y) {
  const Eigen::Index m = y.rows();
  ComplexMatrix mat = ComplexMatrix::Zero(outer * m, outer * m);
  mat.block(i * m, j * m, m, m) = y;
  return AmplifiedElement(outer, m, std::move(mat));
}

ComplexMatrix block_trace(const ComplexMatrix& mat, Eigen::Index outer, Eigen::Index inner) {
  ComplexMatrix out(outer, outer);
  for (Eigen::Index i = 0; i < outer; ++i) {
    for (Eigen::Index j = 0; j < outer; ++j) {
      out(i, j) = mat.block(i * inner, j * inner, inner, inner).trace();
    }
  }
  return out;
}

ComplexMatrix compress(const AmplifiedElement& x, const ComplexMatrix& a, const ComplexMatrix& b) {
  return kron_identity(a, x.inner) * x.mat * kron_identity(b, x.inner);
}

double lp_norm(const RealVector& values, const Exponent& p) {
  if (values.size() == 0) return 0.0;
  const double top = values.cwiseAbs().maxCoeff();
  if (top == 0.0 || p.is_infinite()) return top;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) sum += std::pow(std::abs(values(i)) / top, p.p());
  return top * std::pow(sum, 1.0 / p.p());
}

double schatten_norm(const ComplexMatrix& a, const Exponent& p) {
  require_finite(a);
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> solver(a);
  return lp_norm(solver.singularValues(), p);
}

Complex trace_pair(const ComplexMatrix& b, const ComplexMatrix& a) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "trace_pair operands differ in shape");
  }
  return (b.adjoint() * a).trace();
}

bool is_positive(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols() || !is_hermitian(a, tol)) return false;
  if (a.size() == 0) return true;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  const RealVector& lambda = solver.eigenvalues();
  const double s = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  return lambda(0) >= -tol * s;
}

ComplexMatrix norming_functional(const ComplexMatrix& a, const Exponent& p) {
  if (p.is_infinite()) {
    throw Error(ErrorCode::InvalidExponent, "norming_functional is not defined for p = inf");
  }
  if (operator_norm(a) == 0.0) throw Error(ErrorCode::ZeroInput, "norming_functional of zero");
  const PolarForm pf = polar(a);
  if (p.is_one()) return pf.v;
  const double norm = schatten_norm(a, p);
  const double power = p.p() - 1.0;
  const ComplexMatrix abs_power = fun_calc(pf.absA, [power](double t) { return std::pow(t, power); });
  return pf.v * abs_power / std::pow(norm, power);
}

RealVector project_nonneg_ball(const RealVector& z, const Exponent& r) {
  RealVector y = z.cwiseMax(0.0);
  const double norm = lp_norm(y, r);
  if (norm <= 1.0) return y;
  if (r.is_infinite()) return y.cwiseMin(1.0);
  if (r.p() == 2.0) return y / norm;

  if (r.is_one()) {
    // Soft threshold onto the simplex face sum(x) = 1.
    std::vector<double> sorted(y.data(), y.data() + y.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double threshold = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      cumulative += sorted[k];
      const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
      if (sorted[k] > candidate) threshold = candidate;
    }
    RealVector x = (y.array() - threshold).cwiseMax(0.0);
    const double s = x.sum();
    if (s > 1.0) x /= s;
    return x;
  }

  // KKT: x_i + mu * r * x_i^(r-1) = y_i, with mu chosen so that sum x_i^r = 1.
  const double rp = r.p();
  auto solve_component = [rp](double target, double mu) {
    if (target <= 0.0) return 0.0;
    const double c = mu * rp;
    double lo = 0.0;
    double hi = target;
    double x = target;
    for (int it = 0; it < 100; ++it) {
      const double h = x + c * std::pow(x, rp - 1.0) - target;
      if (h > 0.0) hi = x; else lo = x;
      const double dh = 1.0 + c * (rp - 1.0) * std::pow(x, rp - 2.0);
      double next = x - h / dh;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - x) <= 1e-17 * target || hi - lo <= 1e-17 * target) {
        x = next;
        break;
      }
      x = next;
    }
    return x;
  };
  const Eigen::Index n = y.size();
  auto solve_all = [&](double mu) {
    RealVector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = solve_component(y(i), mu);
    return x;
  };
  auto mass = [&](double mu) {
    const RealVector x = solve_all(mu);
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += std::pow(x(i), rp);
    return s;
  };

  double lo = 0.0;
  double hi = 1.0;
  while (mass(hi) > 1.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mass(mid) > 1.0) lo = mid; else hi = mid;
  }
  RealVector x = solve_all(hi);
  const double final_norm = lp_norm(x, r);
  if (final_norm > 1.0) x /= final_norm;
  return x;
}

ComplexMatrix project_schatten_ball(const ComplexMatrix& a, const Exponent& r) {
  const SvdForm s = svd(a);
  if (lp_norm(s.singular, r) <= 1.0) return a;
  const RealVector projected = project_nonneg_ball(s.singular, r);
  const Eigen::Index k = projected.size();
  return s.left.leftCols(k) * projected.cast<Complex>().asDiagonal() * s.right.leftCols(k).adjoint();
}

ComplexMatrix project_psd_schatten_ball(const ComplexMatrix& h, const Exponent& r) {
  const SpectralForm eig = hermitian_eig(hermitian_part(h));
  const RealVector projected = project_nonneg_ball(eig.eigenvalues, r);
  return hermitian_part(eig.vectors * projected.cast<Complex>().asDiagonal() *
                        eig.vectors.adjoint());
}

ComplexMatrix norm_ascent_direction(const ComplexMatrix& y, const Exponent& p) {
  const SvdForm s = svd(y);
  const Eigen::Index k = s.singular.size();
  if (k == 0 || s.singular(0) == 0.0) return ComplexMatrix::Zero(y.rows(), y.cols());
  const double top = s.singular(0);
  RealVector w(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double ratio = s.singular(i) / top;
    if (p.is_infinite()) {
      w(i) = i == 0 ? 1.0 : 0.0;
    } else if (p.is_one()) {
      w(i) = ratio > 1e-14 ? 1.0 : 0.0;
    } else {
      w(i) = std::pow(ratio, p.p() - 1.0);
    }
  }
  return s.left.leftCols(k) * w.cast<Complex>().asDiagonal() * s.right.leftCols(k).adjoint();
}

namespace {

ComplexMatrix feasible(ComplexMatrix a, const Exponent& r) {
  const double norm = schatten_norm(a, r);
  if (norm > 1.0) a /= norm;
  return a;
}

}  // namespace

MnormEstimate maximize_over_compressions(const AmplifiedElement& x, const Exponent& p,
                                         const CompressionObjective& objective,
                                         const MnormOptions& options,
                                         const IterateObserver& observer) {
  const Eigen::Index n = x.outer;
  const Eigen::Index m = x.inner;
  const Exponent ball(p.is_infinite() ? kInf : 2.0 * p.p());

  auto evaluate = [&](const ComplexMatrix& a, const ComplexMatrix& b) {
    return objective.value(compress(x, a, b));
  };

  // One projected-gradient step on a single variable with step halving.
  auto step = [&](ComplexMatrix& var, const ComplexMatrix& grad, double& eta, double& value,
                  auto&& value_at) {
    const double gnorm = grad.norm();
    if (gnorm == 0.0) return false;
    const ComplexMatrix dir = grad / gnorm;
    for (int tries = 0; tries < 40; ++tries) {
      ComplexMatrix cand = feasible(project_schatten_ball(var + eta * dir, ball), ball);
      const double v = value_at(cand);
      if (v > value) {
        var = std::move(cand);
        value = v;
        eta = std::min(eta * 2.0, 1e8);
        return true;
      }
      eta *= 0.5;
    }
    eta = 1.0;
    return false;
  };

  MnormEstimate best;
  best.lower_bound = -std::numeric_limits<double>::infinity();
  const int restarts = std::max(1, options.restarts);
  for (int r = 0; r < restarts; ++r) {
    ComplexMatrix a;
    ComplexMatrix b;
    if (r == 0) {
      const double c = ball.is_infinite() ? 1.0 : std::pow(static_cast<double>(n), -1.0 / ball.p());
      a = c * ComplexMatrix::Identity(n, n);
      b = a;
    } else {
      Rng rng(derive_seed(options.seed, "compression", static_cast<std::uint64_t>(r)));
      a = ginibre(n, n, rng);
      b = ginibre(n, n, rng);
      a /= schatten_norm(a, ball);
      b /= schatten_norm(b, ball);
    }
    double value = evaluate(a, b);
    if (observer) observer(a, b);
    double eta_a = 1.0;
    double eta_b = 1.0;
    for (int it = 0; it < options.iters; ++it) {
      const double before = value;

      ComplexMatrix g = objective.direction(compress(x, a, b));
      const ComplexMatrix right = x.mat * kron_identity(b, m);
      const ComplexMatrix grad_a = block_trace(g * right.adjoint(), n, m);
      if (step(a, grad_a, eta_a, value, [&](const ComplexMatrix& c) { return evaluate(c, b); }) &&
          observer) {
        observer(a, b);
      }

      g = objective.direction(compress(x, a, b));
      const ComplexMatrix left = kron_identity(a, m) * x.mat;
      const ComplexMatrix grad_b = block_trace(left.adjoint() * g, n, m);
      if (step(b, grad_b, eta_b, value, [&](const ComplexMatrix& c) { return evaluate(a, c); }) &&
          observer) {
        observer(a, b);
      }

      if (value - before <= 1e-15 * std::max(std::abs(value), 1e-300)) break;
    }
    if (value > best.lower_bound) {
      best.lower_bound = value;
      best.a = a;
      best.b = b;
    }
  }
  return best;
}

MnormEstimate mnorm_estimate(const AmplifiedElement& x, const Exponent& p,
                             const MnormOptions& options) {
  // Scalars in the unit ball: the supremum sits at a = b = 1.
  if (x.outer == 1) {
    MnormEstimate exact;
    exact.a = ComplexMatrix::Identity(1, 1);
    exact.b = exact.a;
    exact.lower_bound = schatten_norm(x.mat, p);
    return exact;
  }
  CompressionObjective objective{
      [&p](const ComplexMatrix& y) { return schatten_norm(y, p); },
      [&p](const ComplexMatrix& y) { return norm_ascent_direction(y, p); }};
  return maximize_over_compressions(x, p, objective, options);
}

}  // namespace opsys
