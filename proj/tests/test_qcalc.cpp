#include <doctest.h>

#include <cmath>
#include <limits>

#include "qpeano/qcalc.hpp"
#include "test_support.hpp"

using namespace qpeano;
using testing::close;

namespace {
// Black-box view of a function so the series path (not closed forms) is used.
FunctionSpec opaque(const Polynomial& p) {
  return BuiltinFunction::custom("opaque", [p](double x) { return p(x); });
}
}  // namespace

TEST_CASE("monomial integral law") {
  const QParam base(0.5);  // d_{1/q} with q = 2
  // int_0^1 x^2 d_{1/2}x = 1/[3]_{1/2} = 4/7
  CHECK(jackson_integral_0b(Polynomial::monomial(2), 1.0, base).value == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
  CHECK(jackson_integral_0b(Polynomial::monomial(1), 1.0, base).value == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(jackson_integral_0b(Polynomial::constant(3.0), 2.0, base).value == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(polynomial_jackson_integral(Polynomial::monomial(2), 0.0, 1.0, base) == doctest::Approx(4.0 / 7.0));
  CHECK(polynomial_jackson_integral(Polynomial::monomial(2), 0.0, 3.0, QParam(1.0)) == doctest::Approx(9.0));
}

TEST_CASE("series agrees with the closed form on random polynomials") {
  auto rng = testing::make_rng(21);
  for (int i = 0; i < 60; ++i) {
    const QParam base(testing::uniform(rng, 0.2, 0.8));
    const Polynomial p = testing::random_polynomial(rng, testing::uniform_int(rng, 0, 6));
    const double a = testing::uniform(rng, -2.0, 2.0);
    const double b = testing::uniform(rng, -2.0, 2.0);
    const double series = jackson_integral_ab(opaque(p), a, b, base).value;
    CHECK(close(series, polynomial_jackson_integral(p, a, b, base), 1e-12));
  }
}

TEST_CASE("orientation and additivity") {
  const QParam base(0.5);
  const FunctionSpec f = BuiltinFunction::make("exp");
  const double ab = jackson_integral_ab(f, 0.3, 1.7, base).value;
  CHECK(jackson_integral_ab(f, 1.7, 0.3, base).value == doctest::Approx(-ab).epsilon(1e-14));
  const double split = jackson_integral_ab(f, 0.3, 1.1, base).value + jackson_integral_ab(f, 1.1, 1.7, base).value;
  CHECK(split == doctest::Approx(ab).epsilon(1e-13));
  CHECK(jackson_integral_ab(f, 0.4, 0.4, base).value == 0.0);
}

TEST_CASE("fundamental theorem: D_p int_0^x f d_p = f") {
  auto rng = testing::make_rng(22);
  for (int i = 0; i < 20; ++i) {
    const QParam base(testing::uniform(rng, 0.3, 0.8));
    const FunctionSpec f = BuiltinFunction::make("sin", {{"freq", testing::uniform(rng, 0.5, 2.0)}});
    const double x = testing::uniform(rng, 0.5, 2.0);
    const auto F = [&](double s) { return jackson_integral_0b(f, s, base).value; };
    const double deriv = (F(base.value() * x) - F(x)) / ((base.value() - 1.0) * x);
    CHECK(close(deriv, f(x), 1e-11));
  }
}

TEST_CASE("breakpoints: the truncated power integrates as its right piece") {
  // int_a^b (x - t)_+ d_p x = int_t^b (x - t) d_p x for t inside (a,b)
  const QParam base(0.5);
  const double a = 0.3, b = 1.7, t = 0.9;
  const PiecewisePolynomial trunc({a, t, b}, {Polynomial(), Polynomial::linear(-t, 1.0)}, 0.0);
  const double lhs = jackson_integral(Integrand::of(trunc), a, b, base).value;
  const double rhs = polynomial_jackson_integral(Polynomial::linear(-t, 1.0), t, b, base);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
}

TEST_CASE("q-derivatives") {
  const QParam base(0.5);
  const Polynomial sq = Polynomial::monomial(2);
  // D_p x^2 = [2]_p x
  CHECK(q_derivative(sq, 2.0, base) == doctest::Approx(3.0));
  CHECK(q_derivative(opaque(sq), 2.0, base) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(q_derivative(sq, 0.0, base) == 0.0);  // exact rule covers t = 0
  CHECK_THROWS_AS(q_derivative(opaque(sq), 0.0, base), DomainError);
  CHECK_THROWS_AS(q_derivative(sq, 1.0, QParam(1.0)), DomainError);
  const Polynomial cube = Polynomial::monomial(3);
  CHECK(q_derivative_n(opaque(cube), 1.3, 3, base) == doctest::Approx(q_factorial(3, base)).epsilon(1e-10));
  CHECK(q_derivative_n(opaque(cube), 1.3, 0, base) == doctest::Approx(1.3 * 1.3 * 1.3));
  auto rng = testing::make_rng(23);
  for (int i = 0; i < 30; ++i) {
    const Polynomial p = testing::random_polynomial(rng, 6);
    const int n = testing::uniform_int(rng, 1, 3);
    const double t = testing::uniform(rng, 0.5, 2.0);
    CHECK(close(q_derivative_n(opaque(p), t, n, base), q_derivative_n(p, t, n, base), 1e-8));
  }
}

TEST_CASE("series configuration") {
  IntegralConfig cfg;
  cfg.max_terms = 5;
  const auto r = jackson_series([](double x) { return x; }, 1.0, QParam(0.5), cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.terms == 5);
  cfg.max_terms = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = IntegralConfig{};
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  CHECK_THROWS_AS(jackson_series([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 1.0, QParam(0.5)),
                  DomainError);
  CHECK_THROWS_AS(jackson_series([](double x) { return x; }, 1.0, QParam(2.0)), DomainError);
}

TEST_CASE("norms and the q-Hoelder inequality") {
  const QParam q(2.0);
  // ||1||_p on [0,b] is b^{1/p}
  CHECK(q_norm(Polynomial::constant(1.0), 4.0, 2.0, q) == doctest::Approx(2.0));
  CHECK(q_norm(Polynomial::constant(-3.0), 4.0, INFINITY, q) == 3.0);
  // ||x||_2^2 on [0,1] = int x^2 = 4/7
  CHECK(q_norm(Polynomial::monomial(1), 1.0, 2.0, q) == doctest::Approx(std::sqrt(4.0 / 7.0)));
  CHECK_THROWS_AS(q_norm(Polynomial::monomial(1), 1.0, 0.5, q), DomainError);
  CHECK_THROWS_AS(q_norm(Polynomial::monomial(1), -1.0, 2.0, q), DomainError);

  auto rng = testing::make_rng(24);
  for (int i = 0; i < 40; ++i) {
    const QParam qq(testing::uniform(rng, 1.2, 3.0));
    const Polynomial f = testing::random_polynomial(rng, 4);
    const Polynomial g = testing::random_polynomial(rng, 4);
    const double p1 = testing::uniform(rng, 1.1, 6.0);
    const double p2 = p1 / (p1 - 1.0);
    const auto s = holder_check(f, g, testing::uniform(rng, 0.5, 2.0), p1, p2, qq);
    CHECK(s.lhs <= s.rhs * (1.0 + 1e-12));
  }
  CHECK_THROWS_AS(holder_check(Polynomial::monomial(1), Polynomial::monomial(1), 1.0, 2.0, 3.0, q), DomainError);
}

TEST_CASE("sign scan and mean-value point") {
  const QParam q(2.0);
  const Integrand pos = Integrand::plain([](double t) { return t * (2.0 - t) + 0.1; });
  CHECK(constant_sign(pos, 0.0, 2.0, q.inverse(), 256) == std::optional<int>(1));
  const Integrand wave = Integrand::plain([](double t) { return std::sin(4.0 * t); });
  CHECK_FALSE(constant_sign(wave, 0.0, 2.0, q.inverse(), 256).has_value());
  const Integrand zero = Integrand::plain([](double) { return 0.0; });
  CHECK(constant_sign(zero, 0.0, 1.0, q.inverse(), 16) == std::optional<int>(0));

  // F(t) = t, G = 1 on [1,3]: xi = int t / int 1
  const auto xi = mean_value_xi(Polynomial::monomial(1), Polynomial::constant(1.0), 1.0, 3.0, q);
  REQUIRE(xi.has_value());
  const double expected = polynomial_jackson_integral(Polynomial::monomial(1), 1.0, 3.0, q.inverse()) /
                          polynomial_jackson_integral(Polynomial::constant(1.0), 1.0, 3.0, q.inverse());
  CHECK(*xi == doctest::Approx(expected).epsilon(1e-9));
  CHECK_THROWS_AS(mean_value_xi(Polynomial::monomial(1), Polynomial::linear(-2.0, 1.0), 1.0, 3.0, q),
                  DomainError);
  // a jump straddling the target leaves no xi with F(xi) = target
  const auto none = mean_value_xi(Integrand::plain([](double t) { return t < 2.9 ? 0.0 : 1000.0; }),
                                  Integrand::plain([](double) { return 1.0; }), 1.0, 3.0, q);
  CHECK_FALSE(none.has_value());
}
