#include "qpeano/qspline.hpp"

#include <cmath>
#include <string>

namespace qpeano {

namespace {

/// 1 / prod_{j != i, j in [first,last]} (t_i - t_j)
double symmetric_weight(const KnotVector& knots, std::size_t i, std::size_t first,
                        std::size_t last) {
  double prod = 1.0;
  for (std::size_t j = first; j <= last; ++j) {
    if (j != i) prod *= knots[i] - knots[j];
  }
  return 1.0 / prod;
}

void require_span(const KnotVector& knots, std::size_t k, int n, const char* op) {
  if (n < 0) throw DomainError(std::string(op) + ": degree must be non-negative");
  if (k + static_cast<std::size_t>(n) + 1 >= knots.size()) {
    throw DomainError(std::string(op) + ": not enough knots for this index and degree");
  }
}

}  // namespace

DividedDifferenceTable::DividedDifferenceTable(KnotVector knots, std::vector<double> values)
    : knots_(std::move(knots)) {
  if (values.size() != knots_.size()) {
    throw DomainError("DividedDifferenceTable: one value per knot required");
  }
  table_.push_back(std::move(values));
  for (std::size_t k = 1; k < knots_.size(); ++k) {
    const auto& prev = table_.back();
    std::vector<double> row(prev.size() - 1);
    for (std::size_t i = 0; i < row.size(); ++i) {
      row[i] = (prev[i + 1] - prev[i]) / (knots_[i + k] - knots_[i]);
    }
    table_.push_back(std::move(row));
  }
}

double divided_difference(const FunctionSpec& f, const KnotVector& knots) {
  std::vector<double> values;
  for (double t : knots.values()) values.push_back(f(t));
  return DividedDifferenceTable(knots, std::move(values)).top();
}

double divided_difference_symmetric(const std::vector<double>& values, const KnotVector& knots) {
  if (values.size() != knots.size()) {
    throw DomainError("divided_difference_symmetric: one value per knot required");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    sum += values[i] * symmetric_weight(knots, i, 0, knots.size() - 1);
  }
  return sum;
}

double divided_difference_symmetric(const FunctionSpec& f, const KnotVector& knots) {
  std::vector<double> values;
  for (double t : knots.values()) values.push_back(f(t));
  return divided_difference_symmetric(values, knots);
}

double q_bspline(std::size_t k, int n, const KnotVector& knots, double t, QParam q) {
  require_span(knots, k, n, "q_bspline");
  const std::size_t last = k + static_cast<std::size_t>(n) + 1;
  // Left of the support every truncated power is a full polynomial of degree
  // n, which the divided difference annihilates; right of it they all vanish.
  // At t = t_k itself only the degree-0 spline is non-zero (pieces are
  // [t_r, t_{r+1})); higher degrees vanish there by continuity.
  if (t < knots[k] || t >= knots[last] || (n > 0 && t == knots[k])) return 0.0;
  double sum = 0.0;
  for (std::size_t i = k; i <= last; ++i) {
    sum += truncated_q_power(knots[i], t, n, q) * symmetric_weight(knots, i, k, last);
  }
  return (knots[last] - knots[k]) * sum;
}

PiecewisePolynomial q_bspline_piecewise(std::size_t k, int n, const KnotVector& knots, QParam q) {
  require_span(knots, k, n, "q_bspline_piecewise");
  const std::size_t last = k + static_cast<std::size_t>(n) + 1;
  const double width = knots[last] - knots[k];
  std::vector<double> br(knots.values().begin() + static_cast<std::ptrdiff_t>(k),
                         knots.values().begin() + static_cast<std::ptrdiff_t>(last) + 1);
  std::vector<Polynomial> pieces;
  for (std::size_t r = k; r < last; ++r) {
    Polynomial piece;
    for (std::size_t i = r + 1; i <= last; ++i) {
      // (t_i - t)^{n,q} in t
      Polynomial power = Polynomial::constant(1.0);
      double qj = 1.0;
      for (int j = 0; j < n; ++j) {
        power = power * Polynomial::linear(knots[i], -qj);
        qj *= q.value();
      }
      piece += power * (width * symmetric_weight(knots, i, k, last));
    }
    pieces.push_back(std::move(piece));
  }
  return PiecewisePolynomial(std::move(br), std::move(pieces), 0.0);
}

IdentitySides divdiff_integral_identity(const FunctionSpec& f, const KnotVector& knots, QParam q,
                                        const IntegralConfig& cfg, std::optional<double> a,
                                        std::optional<double> b) {
  q.require_inverse_base("divdiff_integral_identity");
  if (knots.size() < 2) throw DomainError("divdiff_integral_identity: need at least two knots");
  const int n = static_cast<int>(knots.size()) - 2;
  const double lo = a.value_or(knots.front());
  const double hi = b.value_or(knots.back());
  if (lo > knots.front() || hi < knots.back()) {
    throw DomainError("divdiff_integral_identity: [a,b] must contain all knots");
  }

  IdentitySides out;
  out.lhs = divided_difference(f, knots);

  const double width = knots.back() - knots.front();
  const double qn = std::pow(q.value(), n);
  const RealFunction deriv = q_derivative_function(f, n + 1, q.inverse());
  const Integrand integrand = Integrand::plain([deriv, qn](double t) { return deriv(qn * t); }) *
                              Integrand::of(q_bspline_piecewise(0, n, knots, q));
  const double integral = jackson_integral(integrand, lo, hi, q.inverse(), cfg).value;
  out.rhs = q_triangular_power(n, q) / q_factorial(n, q) * integral / width;
  return out;
}

}  // namespace qpeano
