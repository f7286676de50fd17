#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

#include "qpeano/quad.hpp"
#include "test_support.hpp"

using namespace qpeano;
using testing::close;

TEST_CASE("q-trapezoid rule") {
  const QParam q(2.0);
  CHECK(q_trapezoid(Polynomial::constant(1.0), 0.5, 2.0, q) == doctest::Approx(1.5));
  const double exact_x = polynomial_jackson_integral(Polynomial::monomial(1), 0.5, 2.0, q.inverse());
  CHECK(q_trapezoid(Polynomial::monomial(1), 0.5, 2.0, q) == doctest::Approx(exact_x).epsilon(1e-14));
  CHECK(q_trapezoid(Polynomial::monomial(2), 0.0, 1.0, q) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(q_trapezoid(Polynomial::monomial(2), 1.0, 1.0, q), DomainError);
  CHECK_THROWS_AS(q_trapezoid(Polynomial::monomial(2), 0.0, 1.0, QParam(0.5)), DomainError);
}

TEST_CASE("trapezoid error") {
  const QParam q(2.0);
  const auto e = trapezoid_error(Polynomial::monomial(2), 0.0, 1.0, q);
  CHECK(e.actual == doctest::Approx(-2.0 / 21.0).epsilon(1e-13));
  // [3]_2! = 21, [2]_2! = 3, D^2_{1/2} x^2 = 3/2
  CHECK(trapezoid_error_constant(0.0, 1.0, q) == doctest::Approx(-4.0 / 63.0).epsilon(1e-15));
  REQUIRE(e.mean_value_bound.has_value());
  CHECK(*e.mean_value_bound == doctest::Approx(-2.0 / 21.0).epsilon(1e-13));
  CHECK(std::abs(trapezoid_error(Polynomial::linear(2.0, -1.0), 0.3, 1.4, q).actual) < 1e-14);
  // classical limit: -(b-a)^3 f''/12 = -1/6 for x^2 on [0,1]
  CHECK(trapezoid_error_constant(0.0, 1.0, QParam(1.0 + 1e-6)) * 2.0 == doctest::Approx(-1.0 / 6.0).epsilon(1e-5));
  CHECK(trapezoid_error_constant(0.0, 1.0, QParam(1.0)) == doctest::Approx(-1.0 / 12.0));
}

TEST_CASE("trapezoid error equals reconstruction through its kernel") {
  auto rng = testing::make_rng(61);
  for (int i = 0; i < 20; ++i) {
    const QParam q(testing::uniform(rng, 1.2, 3.0));
    const double a = testing::uniform(rng, -1.0, 1.0);
    const double b = a + testing::uniform(rng, 0.3, 2.0);
    const Polynomial f = testing::random_polynomial(rng, 5);
    const PiecewisePolynomial kernel(
        {a, b}, {Polynomial::linear(b, -1.0) * Polynomial::linear(a, -1.0) * (q.value() / q_int(2, q))}, 0.0);
    const Polynomial d2 = f.q_derivative(2, q.inverse()).scaled_argument(q.value());
    const double rec =
        jackson_integral(Integrand::of(FunctionSpec(d2)) * Integrand::of(kernel), a, b, q.inverse()).value;
    CHECK(close(trapezoid_error(f, a, b, q).actual, rec, 1e-8));
    for (double t : {a, 0.3 * a + 0.7 * b, 0.5 * (a + b)}) CHECK(close(trapezoid_kernel(a, b, q, t), kernel(t), 1e-12));
  }
}

TEST_CASE("quadrature rules check exactness") {
  const QParam q(2.0);
  CHECK_NOTHROW(QuadratureRule(KnotVector({0.0, 1.0}), {1.0 / 3.0, 2.0 / 3.0}, 1.0, q, 1));
  CHECK_THROWS_AS(QuadratureRule(KnotVector({0.0, 1.0}), {0.5, 0.5}, 1.0, q, 1), DomainError);
  CHECK_THROWS_AS(QuadratureRule(KnotVector({0.0, 1.0}), {1.0 / 3.0}, 1.0, q, 0), DomainError);
  CHECK_THROWS_AS(QuadratureRule(KnotVector({0.0, 2.0}), {1.0, 1.0}, 1.0, q, 0), DomainError);
  CHECK_THROWS_AS(QuadratureRule(KnotVector({0.5}), {1.0}, 1.0, QParam(0.5), 0), DomainError);
}

TEST_CASE("quad_kernel is the generic kernel of the rule") {
  const QParam q(2.0);
  const QuadratureRule trap(KnotVector({0.0, 1.0}), {1.0 / 3.0, 2.0 / 3.0}, 1.0, q, 1);
  for (int i = 0; i <= 10; ++i) {
    const double t = i / 10.0;
    CHECK(close(quad_kernel(trap, t), 2.0 / 3.0 * (1.0 - t) * (0.0 - t), 1e-14));
  }
  auto rng = testing::make_rng(62);
  for (int i = 0; i < 30; ++i) {
    const QParam qq(testing::uniform(rng, 1.2, 3.0));
    const double b = testing::uniform(rng, 0.5, 3.0);
    const int m = testing::uniform_int(rng, 0, 3);
    const int count = m + 1 + testing::uniform_int(rng, 0, 2);
    const KnotVector nodes(testing::random_points(rng, count, 0.0, b, 0.05 * b));
    const QuadratureRule rule(nodes, optimize_weights_l2(nodes, m, b, qq), b, qq, m);
    const PeanoKernel K(rule.functional(), m);
    for (int j = 0; j <= 20; ++j) {
      const double t = b * j / 20.0;
      CHECK(close(quad_kernel(rule, t), kernel_value(K, t), 1e-8));
    }
  }
}

TEST_CASE("remainder bounds") {
  const QParam q(2.0);
  const QuadratureRule trap(KnotVector({0.0, 1.0}), {1.0 / 3.0, 2.0 / 3.0}, 1.0, q, 1);
  const FunctionSpec sq = Polynomial::monomial(2);
  CHECK(remainder_bound(trap, sq, HolderExponent::Infinity) >= 2.0 / 21.0);
  CHECK(remainder_bound(trap, sq, HolderExponent::Two) >= 2.0 / 21.0);
  // with a lattice-aligned kernel the infinity bound is sup|D^2 f| int |K| = (3/2)(2/3)(2/7)... exact
  const double int_abs_k = 2.0 / 3.0 * (polynomial_jackson_integral(Polynomial({0.0, 1.0, -1.0}), 0.0, 1.0, q.inverse()));
  CHECK(remainder_bound(trap, sq, HolderExponent::Infinity) == doctest::Approx(1.5 * int_abs_k).epsilon(1e-12));
  CHECK(remainder_bound(trap, Polynomial::linear(1.0, 1.0), HolderExponent::Two) == 0.0);
  CHECK(trap.apply(sq) == doctest::Approx(2.0 / 3.0));

  auto rng = testing::make_rng(63);
  for (int i = 0; i < 40; ++i) {
    const QParam qq(testing::uniform(rng, 1.2, 3.0));
    const double b = testing::uniform(rng, 0.5, 2.0);
    const int m = testing::uniform_int(rng, 0, 3);
    const KnotVector nodes(testing::random_points(rng, m + 1 + testing::uniform_int(rng, 0, 2), 0.0, b, 0.05 * b));
    const QuadratureRule rule(nodes, optimize_weights_l2(nodes, m, b, qq), b, qq, m);
    const FunctionSpec f = testing::random_polynomial(rng, testing::uniform_int(rng, 0, m + 4));
    const double R = jackson_integral_0b(f, b, qq.inverse()).value - rule.apply(f);
    CHECK(remainder_bound(rule, f, HolderExponent::Infinity) + 1e-9 >= std::abs(R));
    CHECK(remainder_bound(rule, f, HolderExponent::Two) + 1e-9 >= std::abs(R));
  }
}

TEST_CASE("weight optimisation: interpolatory cases") {
  const auto w = optimize_weights_l2(KnotVector({0.0, 1.0}), 1, 1.0, QParam(2.0));
  CHECK(w[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  const auto s = optimize_weights_l2(KnotVector({0.0, 0.5, 1.0}), 2, 1.0, QParam(1.0 + 1e-8));
  CHECK(std::abs(s[0] - 1.0 / 6.0) < 1e-6);
  CHECK(std::abs(s[1] - 4.0 / 6.0) < 1e-6);
  CHECK(std::abs(s[2] - 1.0 / 6.0) < 1e-6);
  const auto one = optimize_weights_l2(KnotVector({0.3}), 0, 2.5, QParam(2.0));
  CHECK(one[0] == doctest::Approx(2.5));
  const auto zero_node = optimize_weights_l2(KnotVector({0.0}), 0, 2.5, QParam(2.0));
  CHECK(zero_node[0] == doctest::Approx(2.5));
  CHECK_THROWS_AS(optimize_weights_l2(KnotVector({0.0, 1.0}), 2, 1.0, QParam(2.0)), DomainError);
  CHECK_THROWS_AS(optimize_weights_l2(KnotVector({0.0, 2.0}), 0, 1.0, QParam(2.0)), DomainError);
}

TEST_CASE("weight optimisation: no exact perturbation does better") {
  auto rng = testing::make_rng(64);
  for (int trial = 0; trial < 5; ++trial) {
    const QParam q(testing::uniform(rng, 1.3, 3.0));
    const double b = 1.0;
    const int m = testing::uniform_int(rng, 0, 2);
    const KnotVector nodes(testing::random_points(rng, m + 3, 0.0, b, 0.05));
    const auto w = optimize_weights_l2(nodes, m, b, q);
    const double best = kernel_l2_objective(QuadratureRule(nodes, w, b, q, m));

    // perturbations that keep exactness on P_m: project onto ker A
    const auto N = static_cast<Eigen::Index>(nodes.size());
    Eigen::MatrixXd A(m + 1, N);
    for (int j = 0; j <= m; ++j)
      for (Eigen::Index k = 0; k < N; ++k) A(j, k) = std::pow(nodes[k], j);
    const Eigen::MatrixXd P =
        Eigen::MatrixXd::Identity(N, N) - A.transpose() * (A * A.transpose()).ldlt().solve(A);
    for (int i = 0; i < 100; ++i) {
      Eigen::VectorXd d(N);
      for (Eigen::Index k = 0; k < N; ++k) d(k) = testing::uniform(rng, -0.1, 0.1) * std::abs(w[k]);
      d = P * d;
      std::vector<double> pw(w);
      for (Eigen::Index k = 0; k < N; ++k) pw[k] += d(k);
      CHECK(kernel_l2_objective(QuadratureRule(nodes, pw, b, q, m)) >= best * (1.0 - 1e-12));
    }
  }
}
