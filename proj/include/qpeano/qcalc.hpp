#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qpeano/funcrep.hpp"
#include "qpeano/qarith.hpp"

namespace qpeano {

/// Truncation policy for the infinite Jackson series.
struct IntegralConfig {
  double rel_tol = 1e-14;
  int max_terms = 100000;

  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  int terms = 0;          ///< series terms summed, over all partial series
  bool converged = true;  ///< false if some series hit max_terms first
};

using RealFunction = std::function<double(double)>;

/// A function to be q-integrated, possibly made of polynomial pieces.
///
/// `eval(t, anchor)` returns the value at t of the piece that is active at
/// `anchor`.  Integration over [a,b] splits at the breakpoints falling inside
/// (a,b) and sums each sub-integral with the Jackson series of that piece's
/// own formula; this is what makes identities such as
/// "int_a^b (x-t)_+ d_q x = int_t^b (x-t) d_q x" hold exactly.  For a plain
/// function the anchor is ignored and no splitting happens.
struct Integrand {
  std::function<double(double, double)> eval;
  std::vector<double> breakpoints;

  static Integrand plain(RealFunction f);
  static Integrand of(const FunctionSpec& f);
  static Integrand of(const PiecewisePolynomial& f);

  double operator()(double t) const { return eval(t, t); }
};

/// Pointwise product; breakpoints are merged.
Integrand operator*(const Integrand& a, const Integrand& b);
/// t -> |g(t)|^p (piece-wise).
Integrand abs_pow(const Integrand& g, double p);

/// Literal series (1-q) b sum_i q^i f(q^i b) for base q in (0,1).
///
/// Stops once three consecutive terms fall below
/// rel_tol * (|partial sum| + smallest normal), but never before 64 terms (so
/// exact zeros at the first lattice points do not end the sum), or at max_terms.
IntegralResult jackson_series(const RealFunction& f, double b, QParam base,
                              const IntegralConfig& cfg = {});

/// int_a^b g d_q x = int_0^b - int_0^a, split at the integrand's breakpoints.
/// Orientation is signed; a > b is allowed and negative endpoints are taken
/// verbatim (sample points q^i b < 0).
IntegralResult jackson_integral(const Integrand& g, double a, double b, QParam base,
                                const IntegralConfig& cfg = {});

IntegralResult jackson_integral_0b(const FunctionSpec& f, double b, QParam base,
                                   const IntegralConfig& cfg = {});
IntegralResult jackson_integral_ab(const FunctionSpec& f, double a, double b, QParam base,
                                   const IntegralConfig& cfg = {});

/// Closed form of the Jackson integral of a polynomial, from
/// int_0^b x^k d_q x = b^{k+1} / [k+1]_q.  Valid for any base q != 1 with q > 0
/// (including bases arbitrarily close to 1 where the series is impractical).
double polynomial_jackson_integral(const Polynomial& p, double a, double b, QParam base);

/// (f(qt) - f(t)) / ((q-1) t) with q = base.  Polynomials use the exact
/// coefficient rule (which also covers t = 0).
double q_derivative(const FunctionSpec& f, double t, QParam base);

/// n-fold q-derivative.  Black-box variants use the literal recursion on the
/// samples t, qt, ..., q^n t.
double q_derivative_n(const FunctionSpec& f, double t, int n, QParam base);

/// t -> (D_base^n f)(t) as a callable (exact polynomial for Polynomial input).
RealFunction q_derivative_function(const FunctionSpec& f, int n, QParam base);

/// ||f||_{p,q} on [0,b] with respect to d_{1/q}; q > 1.  p = +infinity gives the
/// maximum of |f| over the Jackson points b/q^i, b and any breakpoints in [0,b]
/// (a lower bound of the true supremum).
double q_norm(const FunctionSpec& f, double b, double p, QParam q, const IntegralConfig& cfg = {});

/// Same norms for a general integrand.
double q_norm(const Integrand& f, double b, double p, QParam q, const IntegralConfig& cfg = {});

struct HolderSides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Both sides of int_0^x |f||g| d_{1/q} <= ||f||_{p1} ||g||_{p2} over [0,x].
HolderSides holder_check(const FunctionSpec& f, const FunctionSpec& g, double x, double p1,
                         double p2, QParam q, const IntegralConfig& cfg = {});

/// Searches xi in [a,b] with F(xi) = int F G d_{1/q} / int G d_{1/q}.
///
/// G must keep one sign on [a,b] (checked on Jackson points, breakpoints and a
/// grid; DomainError otherwise).  The existence of xi is only guaranteed for q
/// beyond some unknown threshold, so "not found" is a normal outcome.
std::optional<double> mean_value_xi(const FunctionSpec& F, const FunctionSpec& G, double a,
                                    double b, QParam q, const IntegralConfig& cfg = {});
std::optional<double> mean_value_xi(const Integrand& F, const Integrand& G, double a, double b,
                                    QParam q, const IntegralConfig& cfg = {}, int cells = 1024);

/// Sign of g on [a,b] judged from a uniform grid of `grid` points, the
/// breakpoints and the Jackson sample points (base `base`) of the cut points
/// that fall inside [a,b].  Returns +1 or -1, 0 if g vanishes on every sample,
/// and nullopt if both signs occur.  Values below 1e-13 of the largest sample
/// magnitude count as zero.  A sampled check, not a proof.
std::optional<int> constant_sign(const Integrand& g, double a, double b, QParam base, int grid);

/// Sample points b, qb, q^2 b, ... (base in (0,1)) until they underflow or
/// `max_points` is reached.
std::vector<double> jackson_points(double b, QParam base, int max_points);

}  // namespace qpeano
