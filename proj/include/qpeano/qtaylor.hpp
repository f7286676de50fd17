#pragma once

#include <optional>
#include <vector>

#include "qpeano/funcrep.hpp"
#include "qpeano/qcalc.hpp"

namespace qpeano {

/// sum_k c_k (x - a)^{k,q} with
/// c_k = q^{k(k-1)/2} (D_{1/q}^k f)(q^k a) / [k]_q!.
class QTaylorExpansion {
 public:
  QTaylorExpansion(double base_point, QParam q, std::vector<double> coefficients);

  double base_point() const noexcept { return a_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  QParam q() const noexcept { return q_; }
  const std::vector<double>& coefficients() const noexcept { return c_; }

  double operator()(double x) const;

 private:
  double a_;
  QParam q_;
  std::vector<double> c_;
};

/// Requires q > 1.  For black-box f the base point must be non-zero.
QTaylorExpansion q_taylor_expand(const FunctionSpec& f, double a, int n, QParam q);

enum class RemainderForm {
  /// int_a^b (D_{1/q}^{n+1} f)(q^n t) (x-t)_+^{n,q} d_{1/q}t, split at t = x.
  Truncated,
  /// int_a^x (D_{1/q}^{n+1} f)(q^n t) (x-t)^{n,q} d_{1/q}t.
  Untruncated,
};

/// R_n(f) = q^{n(n+1)/2}/[n]_q! * (integral selected by `form`), times f's
/// (n+1)-st 1/q-derivative.  `b` is the right end of the truncated form
/// (defaults to x; must satisfy b >= x).
IntegralResult q_taylor_remainder(const FunctionSpec& f, double a, double x, int n, QParam q,
                                  const IntegralConfig& cfg = {},
                                  RemainderForm form = RemainderForm::Truncated,
                                  std::optional<double> b = std::nullopt);

}  // namespace qpeano
