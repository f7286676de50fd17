#include "qpeano/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpeano {

KnotVector::KnotVector(std::vector<double> nodes) : t_(std::move(nodes)) {
  if (t_.empty()) throw DomainError("KnotVector: need at least one node");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!std::isfinite(t_[i])) throw DomainError("KnotVector: non-finite node");
    if (i > 0 && !(t_[i - 1] < t_[i])) {
      throw DomainError("KnotVector: nodes must be distinct and increasing");
    }
  }
}

double lagrange_basis(const KnotVector& nodes, std::size_t k, double x) {
  if (k >= nodes.size()) throw std::out_of_range("lagrange_basis: index out of range");
  double l = 1.0;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (v != k) l *= (x - nodes[v]) / (nodes[k] - nodes[v]);
  }
  return l;
}

double interp_error_direct(const FunctionSpec& f, const KnotVector& nodes, double x) {
  double p = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) p += f(nodes[k]) * lagrange_basis(nodes, k, x);
  return f(x) - p;
}

double kowalewski_remainder(const FunctionSpec& f, const KnotVector& nodes, double x, int m,
                            QParam q, const IntegralConfig& cfg) {
  q.require_inverse_base("kowalewski_remainder");
  const int n = static_cast<int>(nodes.size()) - 1;
  if (m < 0 || m > n) throw DomainError("kowalewski_remainder: need 0 <= m <= n");
  const double qm = std::pow(q.value(), m);
  const RealFunction deriv = q_derivative_function(f, m + 1, q.inverse());
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double tk = nodes[k];
    const Integrand g = Integrand::plain(
        [&, tk](double t) { return q_pochhammer_power(tk, t, m, q) * deriv(qm * t); });
    sum += lagrange_basis(nodes, k, x) * jackson_integral(g, tk, x, q.inverse(), cfg).value;
  }
  return q_triangular_power(m, q) / q_factorial(m, q) * sum;
}

LinearFunctional lagrange_error_functional(const KnotVector& nodes, double x, QParam q, double a,
                                           double b) {
  std::vector<PointTerm> pts{{1.0, x}};
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    pts.push_back({-lagrange_basis(nodes, k, x), nodes[k]});
  }
  return LinearFunctional(std::move(pts), {}, a, b, q);
}

LinearFunctional lagrange_error_functional(const KnotVector& nodes, double x, QParam q) {
  double a = std::min(nodes.front(), x);
  double b = std::max(nodes.back(), x);
  if (a == b) b = a + 1.0;  // single node at x: the functional is zero anyway
  return lagrange_error_functional(nodes, x, q, a, b);
}

// The two example kernels below are written out branch by branch on purpose:
// they are fixtures for the generic construction, so they must not share it.

double example1_kernel(double x, double t, QParam q) {
  const double l20 = 0.5 * x * (x - 1.0);
  const double l21 = 1.0 - x * x;
  const double l22 = 0.5 * x * (x + 1.0);
  const auto pw = [&](double node) { return q_pochhammer_power(node, t, 2, q); };
  if (x <= 0.0) {
    if (t < x) return l20 * pw(-1.0);
    if (t < 0.0) return -l21 * pw(0.0) - l22 * pw(1.0);
    return -l22 * pw(1.0);
  }
  if (t < 0.0) return l20 * pw(-1.0);
  // the node-1 term does not reach below x (only the -l22 branch right of x)
  if (t < x) return l20 * pw(-1.0) + l21 * pw(0.0);
  return -l22 * pw(1.0);
}

double example2_kernel(double x, double t, QParam /*q*/) {
  // m = 1: the q-power (x - t)^{1,q} is plain x - t.
  const double l20 = (x - 2.0) * (x - 4.0) / 8.0;
  const double l21 = -x * (x - 4.0) / 4.0;
  const double l22 = x * (x - 2.0) / 8.0;
  if (t >= 4.0) return 0.0;
  if (x < 2.0) {
    if (t < x) return -l20 * t;
    if (t < 2.0) return -l21 * (2.0 - t) - l22 * (4.0 - t);
    return -l22 * (4.0 - t);
  }
  if (t < 2.0) return -l20 * t;
  if (t < x) return -l20 * t + l21 * (2.0 - t);
  return -l22 * (4.0 - t);
}

}  // namespace qpeano
