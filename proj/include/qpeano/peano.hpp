#pragma once

#include <optional>
#include <vector>

#include "qpeano/funcrep.hpp"
#include "qpeano/qcalc.hpp"

namespace qpeano {

/// coef * f(x)
struct PointTerm {
  double coef = 0.0;
  double x = 0.0;
};

/// weight * int_lo^hi f d_{1/q}
struct IntegralTerm {
  double weight = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// A finite combination of point evaluations and definite 1/q-integrals on the
/// domain [a,b].  Every functional of this shape commutes with q-integration,
/// which is the hypothesis the kernel representation needs.
class LinearFunctional {
 public:
  LinearFunctional(std::vector<PointTerm> points, std::vector<IntegralTerm> integrals, double a,
                   double b, QParam q);

  const std::vector<PointTerm>& point_terms() const noexcept { return points_; }
  const std::vector<IntegralTerm>& integral_terms() const noexcept { return integrals_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  QParam q() const noexcept { return q_; }

  /// L(x^k) from the closed-form monomial integrals (no series truncation).
  double monomial_value(int k) const;
  /// 1 + sum |c_i| |x_i|^k + sum |w_j| |hi_j - lo_j| max(|lo_j|,|hi_j|)^k; the
  /// magnitude against which L(x^k) is judged to vanish.
  double monomial_scale(int k) const;

  /// Sorted distinct evaluation/integration endpoints.
  std::vector<double> support_points() const;

 private:
  std::vector<PointTerm> points_;
  std::vector<IntegralTerm> integrals_;
  double a_;
  double b_;
  QParam q_;
};

/// sum c_i f(x_i) + sum w_j int_{lo_j}^{hi_j} f d_{1/q}.
double apply(const LinearFunctional& L, const FunctionSpec& f, const IntegralConfig& cfg = {});

/// Largest n <= max_n with |L(x^k)| <= tol * monomial_scale(k) for all k <= n;
/// -1 if L does not annihilate constants.
int annihilation_degree(const LinearFunctional& L, int max_n, double tol = 1e-9);

/// K(t) = q^{n(n+1)/2}/[n]_q! * L(x -> (x-t)_+^{n,q}).
///
/// The kernel is also held as a piecewise polynomial in t with breaks at the
/// functional's points; reconstruction integrates it piece by piece.
class PeanoKernel {
 public:
  /// Throws DomainError unless L annihilates polynomials of degree <= n.
  PeanoKernel(LinearFunctional L, int n);

  const LinearFunctional& functional() const noexcept { return L_; }
  int degree() const noexcept { return n_; }
  /// Kernel as a function of t; zero outside [a,b].
  const PiecewisePolynomial& pieces() const noexcept { return pieces_; }
  /// q^{n(n+1)/2}/[n]_q!
  double prefactor() const noexcept { return prefactor_; }

 private:
  LinearFunctional L_;
  int n_;
  double prefactor_;
  PiecewisePolynomial pieces_;
};

/// Direct evaluation of K(t) for t in [a,b]: point terms through
/// truncated_q_power, integral terms through the exact 1/q-integral in x of
/// the truncated power.  For n = 0 the step in an integral term is closed at
/// x = t, so K(b) = (1 - 1/q) b sum w_j over terms ending at b; for n >= 1 K(b) = 0.
double kernel_value(const PeanoKernel& K, double t);

/// int_a^b (D_{1/q}^{n+1} f)(q^n t) K(t) d_{1/q}t.  Equals apply(L, f).
IntegralResult reconstruct(const PeanoKernel& K, const FunctionSpec& f,
                           const IntegralConfig& cfg = {});

/// The kernel as an integrand (piecewise, anchored) for further q-integration.
Integrand kernel_integrand(const PeanoKernel& K);

struct MeanValueForm {
  /// Integration-variable location; the derivative is sampled at q^n * xi.
  double xi = 0.0;
  double value = 0.0;
};

/// L(f) = (D_{1/q}^{n+1} f)(q^n xi) q^{n(n+1)/2} L(x^{n+1}) / [n+1]_q!.
///
/// Throws DomainError when the kernel changes sign (4096-point grid plus
/// Jackson points).  Returns nullopt when no xi is bracketed.
std::optional<MeanValueForm> mean_value_form(const PeanoKernel& K, const FunctionSpec& f,
                                             const IntegralConfig& cfg = {});

}  // namespace qpeano
