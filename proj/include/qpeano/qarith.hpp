#pragma once

#include <stdexcept>
#include <string>

namespace qpeano {

/// Raised when an operation is called outside the domain on which it is defined
/// (wrong range of q, singular quotient, non-distinct knots, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// The base q of the calculus.
///
/// The value is kept as given; operations that need base 1/q ask for
/// `inverse()` explicitly so the orientation is always visible at the call
/// site.  Jackson series are summed in a base in (0,1); the "d_{1/q}"
/// operations take q > 1 and sum in base 1/q.
class QParam {
 public:
  explicit QParam(double q);

  double value() const noexcept { return q_; }
  QParam inverse() const { return QParam(1.0 / q_); }
  bool is_classical() const noexcept { return q_ == 1.0; }

  /// Throws unless q lies in (0,1).
  void require_series_base(const char* op) const;
  /// Throws unless q > 1.
  void require_inverse_base(const char* op) const;

 private:
  double q_;
};

/// [n]_q = 1 + q + ... + q^{n-1}, summed directly so it is continuous through q = 1.
double q_int(int n, QParam q);

/// [n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1.
double q_factorial(int n, QParam q);

/// q^{n(n+1)/2}, the scale factor that recurs in every remainder formula.
double q_triangular_power(int n, QParam q);

/// (x - t)^{n,q} = (x - q^{n-1} t) ... (x - q t)(x - t); equal to 1 for n = 0.
double q_pochhammer_power(double x, double t, int n, QParam q);

/// (x - t)_+^{n,q} = (x - q^{n-1} t) ... (x - q t)(x - t)_+.
///
/// Only the last factor is clamped, so the value can be negative for q > 1.
/// For n = 0 the convention is 1 when x > t and 0 otherwise.
double truncated_q_power(double x, double t, int n, QParam q);

}  // namespace qpeano
