#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opsys/dilation.hpp"
#include "opsys/error.hpp"
#include "opsys/schatten.hpp"
#include "support.hpp"

#include <cmath>
#include <limits>

using namespace opsys;
using namespace testing_support;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ComplexMatrix pattern() {
  return real_matrix(4, 4, {1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1});
}

double sqrt_t(double t) { return std::sqrt(t); }

// Exact block-coordinate ascent for p = 2, used as an oracle for the M_n norm.
// With b fixed, ||(a (x) I) y||_2^2 = tr(a^*a M) for M = block_trace(y y^*), so the
// optimum over ||a||_4 <= 1 is a^*a = M / ||M||_2; the b-step is symmetric.
double exact_ascent_p2(const AmplifiedElement& x, ComplexMatrix a, ComplexMatrix b, int iters) {
  const Eigen::Index n = x.outer;
  const Eigen::Index m = x.inner;
  const Exponent two(2.0);
  double value = 0.0;
  for (int it = 0; it < iters; ++it) {
    const ComplexMatrix yb = x.mat * kron_identity(b, m);
    const ComplexMatrix mm = hermitian_part(block_trace(yb * yb.adjoint(), n, m));
    const double mnorm = schatten_norm(mm, two);
    if (mnorm == 0.0) return 0.0;
    a = fun_calc(mm / mnorm, sqrt_t);

    const ComplexMatrix ya = kron_identity(a, m) * x.mat;
    const ComplexMatrix nn = hermitian_part(block_trace(ya.adjoint() * ya, n, m));
    const double nnorm = schatten_norm(nn, two);
    if (nnorm == 0.0) return 0.0;
    b = fun_calc(nn / nnorm, sqrt_t);
    const double next = schatten_norm(compress(x, a, b), two);
    if (std::abs(next - value) < 1e-15) return next;
    value = next;
  }
  return value;
}

}  // namespace

TEST_CASE("Exponent invariants and parsing") {
  const Exponent two(2.0);
  CHECK(two.q() == doctest::Approx(2.0));
  CHECK(Exponent(1.0).q() == kInf);
  CHECK(Exponent::infinity().q() == 1.0);
  CHECK(Exponent::infinity().is_infinite());
  CHECK(Exponent(3.0).q() == doctest::Approx(1.5));
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.3}) {
    const Exponent e(p);
    if (!e.is_one()) CHECK(1.0 / e.p() + 1.0 / e.q() == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(dual_exponent(Exponent(2.0)).p() == doctest::Approx(2.0));
  CHECK(dual_exponent(Exponent(1.0)).is_infinite());
  CHECK(dual_exponent(Exponent(3.0)).p() == doctest::Approx(1.5));
  CHECK(dual_exponent(Exponent::infinity()).p() == 1.0);
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("7.3").p() == 7.3);
  CHECK(Exponent::parse("7.3").to_string() == "7.3");
  CHECK(Exponent::infinity().inverse() == 0.0);

  for (double bad : {0.999, 0.0, -2.0, std::nan("")}) {
    try {
      Exponent e(bad);
      FAIL("expected InvalidExponent");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::InvalidExponent);
    }
  }
  CHECK_THROWS_AS(Exponent::parse("two"), Error);
  CHECK_THROWS_AS(Exponent::parse("2x"), Error);
  CHECK_THROWS_AS(Exponent::parse(""), Error);
}

TEST_CASE("schatten_norm examples") {
  for (double pv : p_grid()) {
    const Exponent p(pv);
    CAPTURE(pv);
    CHECK(std::abs(schatten_norm(pattern(), p) - std::pow(2.0, 1.0 + 1.0 / pv)) <= 1e-12);
    CHECK(std::abs(schatten_norm(0.5 * pattern(), p) - std::pow(2.0, 1.0 / pv)) <= 1e-12);
    CHECK(schatten_norm(diag({1, 1}), p) == std::pow(2.0, 1.0 / pv));
  }
  CHECK(schatten_norm(diag({1, 1}), Exponent::infinity()) == 1.0);
  CHECK(schatten_norm(ComplexMatrix::Zero(3, 3), Exponent(1.5)) == 0.0);

  Rng rng = rng_for("rank1");
  ComplexMatrix u = ginibre(4, 1, rng);
  ComplexMatrix w = ginibre(4, 1, rng);
  u /= u.norm();
  w /= w.norm();
  for (double pv : p_grid()) CHECK(schatten_norm(u * w.adjoint(), Exponent(pv)) == doctest::Approx(1.0).epsilon(1e-13));

  // Max-scaling keeps tiny and huge inputs finite.
  CHECK(schatten_norm(diag({1e-200, 1e-200}), Exponent(7.3)) ==
        doctest::Approx(1e-200 * std::pow(2.0, 1.0 / 7.3)));
  CHECK(schatten_norm(diag({1e200, 1e200}), Exponent(3.0)) ==
        doctest::Approx(1e200 * std::pow(2.0, 1.0 / 3.0)));
}

TEST_CASE("schatten_norm is a norm, monotone in p, and involution invariant") {
  Rng rng = rng_for("norm_props");
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 6);
    const ComplexMatrix a = ginibre(n, n, rng);
    const ComplexMatrix b = ginibre(n, n, rng);
    const Complex lambda(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
    double previous = kInf;
    for (double pv : {1.0, 1.5, 2.0, 3.0, 7.3, kInf}) {
      const Exponent p = std::isinf(pv) ? Exponent::infinity() : Exponent(pv);
      const double na = schatten_norm(a, p);
      CHECK(schatten_norm(a + b, p) <= na + schatten_norm(b, p) + 1e-10);
      CHECK(std::abs(schatten_norm(lambda * a, p) - std::abs(lambda) * na) <= 1e-10 * (1.0 + na));
      CHECK(schatten_norm(ComplexMatrix(a.adjoint()), p) == doctest::Approx(na).epsilon(1e-14));
      CHECK(na <= previous * (1.0 + 1e-14));
      previous = na;
    }
  }
}

TEST_CASE("block p-additivity") {
  Rng rng = rng_for("additivity");
  for (int i = 0; i < 50; ++i) {
    const ComplexMatrix a = ginibre(3, 3, rng);
    const ComplexMatrix b = ginibre(2, 2, rng);
    for (double pv : p_grid()) {
      const Exponent p(pv);
      const double lhs = std::pow(schatten_norm(direct_sum(a, b), p), pv);
      const double rhs = std::pow(schatten_norm(a, p), pv) + std::pow(schatten_norm(b, p), pv);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
    }
  }
}

TEST_CASE("trace_pair and Hoelder on 500 pairs") {
  CHECK(trace_pair(ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3)) == Complex(3.0));
  CHECK(trace_pair(diag({1, 0}), diag({0, 1})) == Complex(0.0));
  try {
    trace_pair(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }

  Rng rng = rng_for("hoelder");
  for (int i = 0; i < 500; ++i) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 6);
    const ComplexMatrix a = ginibre(n, n, rng);
    const ComplexMatrix b = i % 2 ? random_rank_deficient(n, (n + 1) / 2, rng) : ginibre(n, n, rng);
    const Exponent p(p_grid()[i % p_grid().size()]);
    const double bound = schatten_norm(a, p) * schatten_norm(b, dual_exponent(p));
    CHECK(std::abs(trace_pair(b, a)) <= bound * (1.0 + 1e-12));
  }
}

TEST_CASE("is_positive examples") {
  CHECK(is_positive(ComplexMatrix::Identity(3, 3)));
  CHECK_FALSE(is_positive(real_matrix(2, 2, {0, 1, 1, 0})));
  CHECK_FALSE(is_positive(real_matrix(2, 2, {1, 1, 0, 1})));
  CHECK_FALSE(is_positive(ComplexMatrix::Zero(2, 3)));
  Rng rng = rng_for("positive");
  for (int i = 0; i < 20; ++i) CHECK(is_positive(dilate(ginibre(4, 4, rng)).mat));
}

TEST_CASE("norming_functional") {
  const ComplexMatrix b = norming_functional(diag({1, 1}), Exponent(2.0));
  CHECK(diff(b, diag({1, 1}) / std::sqrt(2.0)) < 1e-15);
  CHECK(trace_pair(b, diag({1, 1})).real() == doctest::Approx(std::sqrt(2.0)));

  Rng rng = rng_for("norming");
  ComplexMatrix u = ginibre(3, 1, rng);
  ComplexMatrix w = ginibre(3, 1, rng);
  u /= u.norm();
  w /= w.norm();
  const ComplexMatrix r1 = u * w.adjoint();
  for (double pv : p_grid()) {
    const ComplexMatrix c = norming_functional(r1, Exponent(pv));
    CHECK(diff(c, r1) < 1e-12);
    CHECK(std::abs(trace_pair(c, r1) - 1.0) < 1e-12);
  }

  const ComplexMatrix a = ginibre(4, 4, rng);
  const ComplexMatrix c = norming_functional(a, Exponent(3.0));
  CHECK(std::abs(trace_pair(c, a) - schatten_norm(a, Exponent(3.0))) <= 1e-10);
  CHECK(std::abs(schatten_norm(c, Exponent(1.5)) - 1.0) <= 1e-10);

  // Duality attainment across the grid, including rank-deficient inputs.
  for (int i = 0; i < 100; ++i) {
    const ComplexMatrix x = sample_square(rng, 6, i);
    if (operator_norm(x) == 0.0) continue;
    for (double pv : p_grid()) {
      const Exponent p(pv);
      const ComplexMatrix cx = norming_functional(x, p);
      CHECK(std::abs(trace_pair(cx, x) - schatten_norm(x, p)) <= 1e-10 * scale(x));
      CHECK(schatten_norm(cx, dual_exponent(p)) <= 1.0 + 1e-10);
    }
  }

  try {
    norming_functional(ComplexMatrix::Zero(2, 2), Exponent(2.0));
    FAIL("expected ZeroInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroInput);
  }
  CHECK_THROWS_AS(norming_functional(diag({1, 2}), Exponent::infinity()), Error);
}

TEST_CASE("nonnegative ball projection satisfies the variational inequality") {
  // x = Proj(z) iff <z - x, y - x> <= 0 for every feasible y.
  Rng rng = rng_for("proj_vec");
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double rv : {1.0, 1.5, 2.0, 3.0, 7.3, kInf}) {
    const Exponent r = std::isinf(rv) ? Exponent::infinity() : Exponent(rv);
    for (int i = 0; i < 40; ++i) {
      RealVector z(5);
      for (Eigen::Index k = 0; k < 5; ++k) z(k) = 2.0 * normal(rng);
      const RealVector x = project_nonneg_ball(z, r);
      CHECK(x.minCoeff() >= 0.0);
      CHECK(lp_norm(x, r) <= 1.0 + 1e-12);
      for (int j = 0; j < 50; ++j) {
        RealVector y(5);
        for (Eigen::Index k = 0; k < 5; ++k) y(k) = unit(rng);
        y *= (j % 2 ? 1.0 : unit(rng)) / lp_norm(y, r);
        CHECK((z - x).dot(y - x) <= 1e-9);
      }
    }
  }
  // Points already inside are fixed.
  RealVector inside(3);
  inside << 0.1, 0.2, 0.3;
  CHECK((project_nonneg_ball(inside, Exponent(2.0)) - inside).norm() == 0.0);
}

TEST_CASE("matrix ball projections satisfy the variational inequality") {
  Rng rng = rng_for("proj_mat");
  for (double rv : {1.0, 2.0, 3.0, 14.6}) {
    const Exponent r(rv);
    for (int i = 0; i < 20; ++i) {
      const ComplexMatrix z = 1.5 * ginibre(3, 3, rng);
      const ComplexMatrix x = project_schatten_ball(z, r);
      CHECK(schatten_norm(x, r) <= 1.0 + 1e-12);
      const ComplexMatrix h = hermitian_part(z);
      const ComplexMatrix xp = project_psd_schatten_ball(h, r);
      CHECK(is_positive(xp, 1e-12));
      CHECK(schatten_norm(xp, r) <= 1.0 + 1e-12);
      for (int j = 0; j < 30; ++j) {
        ComplexMatrix y = ginibre(3, 3, rng);
        y /= schatten_norm(y, r) * (1.0 + (j % 3));
        CHECK(trace_pair(z - x, y - x).real() <= 1e-9);
        ComplexMatrix yp = random_psd(3, rng);
        yp /= schatten_norm(yp, r) * (1.0 + (j % 3));
        CHECK(trace_pair(h - xp, yp - xp).real() <= 1e-9);
      }
    }
  }
}

TEST_CASE("amplified elements") {
  CHECK_THROWS_AS(AmplifiedElement(2, 2, ComplexMatrix::Zero(3, 3)), Error);
  Rng rng = rng_for("amplified");
  const ComplexMatrix y = ginibre(3, 3, rng);
  const AmplifiedElement e = single_block(2, 1, 0, y);
  CHECK(e.mat.rows() == 6);
  CHECK(diff(e.block(1, 0), y) == 0.0);
  CHECK(e.block(0, 0).norm() == 0.0);

  const ComplexMatrix big = ginibre(6, 6, rng);
  const ComplexMatrix bt = block_trace(big, 2, 3);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j)
      CHECK(std::abs(bt(i, j) - big.block(i * 3, j * 3, 3, 3).trace()) < 1e-14);

  // compress agrees with the blockwise formula sum_kl a_ik x_kl b_lj.
  const AmplifiedElement x(2, 3, big);
  const ComplexMatrix a = ginibre(2, 2, rng);
  const ComplexMatrix b = ginibre(2, 2, rng);
  const ComplexMatrix c = compress(x, a, b);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      ComplexMatrix expect = ComplexMatrix::Zero(3, 3);
      for (Eigen::Index k = 0; k < 2; ++k)
        for (Eigen::Index l = 0; l < 2; ++l) expect += a(i, k) * x.block(k, l) * b(l, j);
      CHECK(diff(c.block(i * 3, j * 3, 3, 3), expect) < 1e-12);
    }
  }
}

TEST_CASE("norm_ascent_direction matches finite differences") {
  Rng rng = rng_for("ascent");
  for (double pv : p_grid()) {
    const Exponent p(pv);
    const ComplexMatrix y = ginibre(4, 4, rng);
    const ComplexMatrix g = norm_ascent_direction(y, p);
    // d/dt ||y + t e||_p = c Re tr(g^* e) with one positive c for all e.
    double ratio = 0.0;
    for (int k = 0; k < 6; ++k) {
      const ComplexMatrix e = ginibre(4, 4, rng);
      const double h = 1e-6;
      const double fd = (schatten_norm(y + h * e, p) - schatten_norm(y - h * e, p)) / (2 * h);
      const double lin = trace_pair(g, e).real();
      if (std::abs(lin) < 1e-3) continue;
      const double r = fd / lin;
      CHECK(r > 0.0);
      if (ratio == 0.0) ratio = r;
      CHECK(r == doctest::Approx(ratio).epsilon(1e-4));
    }
  }
}

TEST_CASE("mnorm_estimate degenerate outer level is exact") {
  Rng rng = rng_for("mnorm_n1");
  for (double pv : p_grid()) {
    const Exponent p(pv);
    const ComplexMatrix y = ginibre(3, 3, rng);
    const MnormEstimate est = mnorm_estimate(AmplifiedElement(1, 3, y), p);
    CHECK(std::abs(est.lower_bound - schatten_norm(y, p)) <= 1e-8);
  }
}

TEST_CASE("mnorm_estimate on single-block inputs") {
  Rng rng = rng_for("mnorm_block");
  for (double pv : p_grid()) {
    const Exponent p(pv);
    for (Eigen::Index n : {2, 3}) {
      const ComplexMatrix y = ginibre(2, 2, rng);
      const AmplifiedElement x = single_block(n, 0, 0, y);
      const MnormEstimate est = mnorm_estimate(x, p);
      CAPTURE(pv);
      CAPTURE(n);
      CHECK(std::abs(est.lower_bound - schatten_norm(y, p)) <= 1e-6);
      const Exponent ball(2.0 * pv);
      CHECK(schatten_norm(est.a, ball) <= 1.0 + 1e-12);
      CHECK(schatten_norm(est.b, ball) <= 1.0 + 1e-12);
      CHECK(std::abs(schatten_norm(compress(x, est.a, est.b), p) - est.lower_bound) <= 1e-12);
    }
  }
}

TEST_CASE("mnorm_estimate at p = 2 against exact block-coordinate ascent") {
  Rng rng = rng_for("mnorm_oracle");
  for (int i = 0; i < 8; ++i) {
    const AmplifiedElement x(2, 2, ginibre(4, 4, rng));
    // Oracle: dense random starts in the S_4 ball, each refined to a fixed point.
    double oracle = 0.0;
    for (int s = 0; s < 200; ++s) {
      ComplexMatrix a = ginibre(2, 2, rng);
      ComplexMatrix b = ginibre(2, 2, rng);
      a /= schatten_norm(a, Exponent(4.0));
      b /= schatten_norm(b, Exponent(4.0));
      oracle = std::max(oracle, exact_ascent_p2(x, a, b, 5000));
    }
    MnormOptions options;
    options.restarts = 8;
    options.iters = 2000;
    const MnormEstimate est = mnorm_estimate(x, Exponent(2.0), options);
    CAPTURE(i);
    CHECK(est.lower_bound <= oracle + 1e-9);
    CHECK(est.lower_bound >= oracle - 1e-6);
    // a = b = 2^(-1/4) I gives ||x||_2 / sqrt(2); contractions give at most ||x||_2.
    CHECK(est.lower_bound >= schatten_norm(x.mat, Exponent(2.0)) / std::sqrt(2.0) - 1e-12);
    CHECK(est.lower_bound <= schatten_norm(x.mat, Exponent(2.0)) + 1e-12);
  }
}

TEST_CASE("mnorm_estimate is deterministic and monotone in restarts") {
  Rng rng = rng_for("mnorm_det");
  const AmplifiedElement x(3, 2, ginibre(6, 6, rng));
  MnormOptions options;
  options.seed = 11;
  const Exponent p(1.5);
  const MnormEstimate e1 = mnorm_estimate(x, p, options);
  const MnormEstimate e2 = mnorm_estimate(x, p, options);
  CHECK(e1.lower_bound == e2.lower_bound);
  CHECK(e1.a == e2.a);
  options.restarts = 8;
  CHECK(mnorm_estimate(x, p, options).lower_bound >= e1.lower_bound);
}
