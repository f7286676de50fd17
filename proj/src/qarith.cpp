#include "qpeano/qarith.hpp"

#include <cmath>
#include <string>

namespace qpeano {

namespace {

void require_order(int n, const char* op) {
  if (n < 0) {
    throw std::invalid_argument(std::string(op) + ": order must be non-negative");
  }
}

}  // namespace

QParam::QParam(double q) : q_(q) {
  if (!std::isfinite(q) || q <= 0.0) {
    throw DomainError("q must be a finite positive number, got " + std::to_string(q));
  }
}

void QParam::require_series_base(const char* op) const {
  if (!(q_ > 0.0 && q_ < 1.0)) {
    throw DomainError(std::string(op) + ": Jackson series base must lie in (0,1), got " +
                      std::to_string(q_));
  }
}

void QParam::require_inverse_base(const char* op) const {
  if (!(q_ > 1.0)) {
    throw DomainError(std::string(op) + ": requires q > 1 (integration in base 1/q), got " +
                      std::to_string(q_));
  }
}

double q_int(int n, QParam q) {
  require_order(n, "q_int");
  double sum = 0.0;
  double power = 1.0;
  for (int j = 0; j < n; ++j) {
    sum += power;
    power *= q.value();
  }
  return sum;
}

double q_factorial(int n, QParam q) {
  require_order(n, "q_factorial");
  double product = 1.0;
  for (int k = 1; k <= n; ++k) product *= q_int(k, q);
  return product;
}

double q_triangular_power(int n, QParam q) {
  require_order(n, "q_triangular_power");
  return std::pow(q.value(), 0.5 * n * (n + 1));
}

double q_pochhammer_power(double x, double t, int n, QParam q) {
  require_order(n, "q_pochhammer_power");
  double product = 1.0;
  double shift = t;
  for (int j = 0; j < n; ++j) {
    product *= x - shift;
    shift *= q.value();
  }
  return product;
}

double truncated_q_power(double x, double t, int n, QParam q) {
  require_order(n, "truncated_q_power");
  if (x <= t) return 0.0;
  return q_pochhammer_power(x, t, n, q);
}

}  // namespace qpeano
