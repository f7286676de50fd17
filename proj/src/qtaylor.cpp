#include "qpeano/qtaylor.hpp"

#include <cmath>

namespace qpeano {

QTaylorExpansion::QTaylorExpansion(double base_point, QParam q, std::vector<double> coefficients)
    : a_(base_point), q_(q), c_(std::move(coefficients)) {
  q_.require_inverse_base("QTaylorExpansion");
  if (c_.empty()) throw DomainError("QTaylorExpansion needs at least one coefficient");
}

double QTaylorExpansion::operator()(double x) const {
  double sum = 0.0;
  double basis = 1.0;
  double shift = a_;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    sum += c_[k] * basis;
    basis *= x - shift;  // (x-a)^{k+1,q} = (x - q^k a) (x-a)^{k,q}
    shift *= q_.value();
  }
  return sum;
}

QTaylorExpansion q_taylor_expand(const FunctionSpec& f, double a, int n, QParam q) {
  q.require_inverse_base("q_taylor_expand");
  if (n < 0) throw std::invalid_argument("q_taylor_expand: degree must be non-negative");
  if (a == 0.0 && !f.polynomial() && n > 0) {
    throw DomainError("q_taylor_expand: base point 0 needs a polynomial (1/q-derivative undefined)");
  }
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double point = std::pow(q.value(), k) * a;
    const double deriv = q_derivative_n(f, point, k, q.inverse());
    c[static_cast<std::size_t>(k)] =
        std::pow(q.value(), 0.5 * k * (k - 1)) * deriv / q_factorial(k, q);
  }
  return QTaylorExpansion(a, q, std::move(c));
}

IntegralResult q_taylor_remainder(const FunctionSpec& f, double a, double x, int n, QParam q,
                                  const IntegralConfig& cfg, RemainderForm form,
                                  std::optional<double> b) {
  q.require_inverse_base("q_taylor_remainder");
  if (n < 0) throw std::invalid_argument("q_taylor_remainder: degree must be non-negative");
  const double scale = q_triangular_power(n, q) / q_factorial(n, q);
  const double qn = std::pow(q.value(), n);
  const RealFunction deriv = q_derivative_function(f, n + 1, q.inverse());

  IntegralResult r;
  if (form == RemainderForm::Untruncated) {
    const Integrand g = Integrand::plain(
        [&](double t) { return deriv(qn * t) * q_pochhammer_power(x, t, n, q); });
    r = jackson_integral(g, a, x, q.inverse(), cfg);
  } else {
    const double right = b.value_or(x);
    if (!(a <= x && x <= right)) {
      throw DomainError("q_taylor_remainder: truncated form needs a <= x <= b");
    }
    // The truncated power is a two-piece function of t with its break at x.
    const Integrand g{[&](double t, double anchor) {
                        return anchor < x ? deriv(qn * t) * q_pochhammer_power(x, t, n, q) : 0.0;
                      },
                      {x}};
    r = jackson_integral(g, a, right, q.inverse(), cfg);
  }
  r.value *= scale;
  return r;
}

}  // namespace qpeano
