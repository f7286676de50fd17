#pragma once

#include <optional>
#include <vector>

#include "qpeano/funcrep.hpp"
#include "qpeano/interp.hpp"
#include "qpeano/peano.hpp"
#include "qpeano/qcalc.hpp"

namespace qpeano {

/// int_0^b f d_{1/q} ~ sum_k gamma_k f(t_k), exact on polynomials of degree
/// <= design_degree (checked on construction).
class QuadratureRule {
 public:
  QuadratureRule(KnotVector nodes, std::vector<double> weights, double b, QParam q,
                 int design_degree);

  const KnotVector& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double b() const noexcept { return b_; }
  QParam q() const noexcept { return q_; }
  int design_degree() const noexcept { return m_; }

  /// f -> int_0^b f d_{1/q} - sum_k gamma_k f(t_k) on [0,b].
  LinearFunctional functional() const;
  double apply(const FunctionSpec& f) const;

 private:
  KnotVector nodes_;
  std::vector<double> weights_;
  double b_;
  QParam q_;
  int m_;
};

/// ((b - aq) f(a) + (bq - a) f(b)) / [2]_q.
double q_trapezoid(const FunctionSpec& f, double a, double b, QParam q);

/// int_a^b f d_{1/q} minus the trapezoid rule, as a functional on [a,b].
LinearFunctional trapezoid_functional(double a, double b, QParam q);

/// -q (b-a)(bq-a)(b-aq) / ([3]_q! [2]_q!); the error is this times D_{1/q}^2 f.
double trapezoid_error_constant(double a, double b, QParam q);

/// (q/[2]_q)(b-t)(a-t) on [a,b], zero elsewhere.
double trapezoid_kernel(double a, double b, QParam q, double t);

struct TrapezoidError {
  double actual = 0.0;
  /// constant * (D_{1/q}^2 f)(q xi), present when xi was found.
  std::optional<double> mean_value_bound;
  std::optional<double> xi;
};

TrapezoidError trapezoid_error(const FunctionSpec& f, double a, double b, QParam q,
                               const IntegralConfig& cfg = {});

/// q^{m(m+1)/2}/[m]_q! * int_0^b (x-t)_+^{m,q} d_{1/q}x - s(t;q), where s is
/// the spline q^{m(m+1)/2}/[m]_q! sum_k gamma_k (t_k - t)_+^{m,q}.
///
/// The first term equals q^{m(m+3)/2}(b - t/q)^{m+1,q}/[m+1]_q! (for m = 0 with
/// the step closed at x = t, as in the generic kernel).
double quad_kernel(const QuadratureRule& rule, double t);

/// int_0^b K(t)^2 d_{1/q}t, piece by piece in closed form.
double kernel_l2_objective(const QuadratureRule& rule);

enum class HolderExponent { Two, Infinity };

/// Upper bound for |R_n(f;q)| from the Hoelder inequality applied to the
/// kernel representation, with the derivative taken as t -> (D^{m+1} f)(q^m t).
double remainder_bound(const QuadratureRule& rule, const FunctionSpec& f, HolderExponent p1,
                       const IntegralConfig& cfg = {});

/// Weights minimising int_0^b K^2 d_{1/q} among rules on `nodes` exact on P_m.
std::vector<double> optimize_weights_l2(const KnotVector& nodes, int m, double b, QParam q,
                                        const IntegralConfig& cfg = {});

}  // namespace qpeano
