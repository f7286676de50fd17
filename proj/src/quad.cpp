#include "qpeano/quad.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qpeano {

namespace {

constexpr double kExactnessTol = 1e-9;

/// (t_k - t)^{m,q} as a polynomial in t.
Polynomial node_power(double tk, int m, QParam q) {
  Polynomial p = Polynomial::constant(1.0);
  double qj = 1.0;
  for (int j = 0; j < m; ++j) {
    p = p * Polynomial::linear(tk, -qj);
    qj *= q.value();
  }
  return p;
}

/// c * int_0^b (x - t)_+^{m,q} d_{1/q}x as a polynomial in t valid on [0,b]
/// (the step closed at x = t when m = 0, as in the generic kernel).
Polynomial moment_polynomial(double b, int m, QParam q) {
  Polynomial top = Polynomial::constant(1.0);
  double qj = 1.0 / q.value();
  for (int j = 0; j <= m; ++j) {
    top = top * Polynomial::linear(b, -qj);
    qj *= q.value();
  }
  const double c = q_triangular_power(m, q) / q_factorial(m, q);
  return top * (c / q_int(m + 1, q.inverse()));
}

/// Breakpoints 0, nodes, b (sorted, distinct).
std::vector<double> rule_cuts(const KnotVector& nodes, double b) {
  std::vector<double> cuts = nodes.values();
  cuts.push_back(0.0);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

struct Atom {
  double point;
  double weight;  // signed Jackson weight
  double value;   // weight * kernel value
};

}  // namespace

// ------------------------------------------------------------ QuadratureRule

QuadratureRule::QuadratureRule(KnotVector nodes, std::vector<double> weights, double b, QParam q,
                               int design_degree)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), b_(b), q_(q), m_(design_degree) {
  q_.require_inverse_base("QuadratureRule");
  if (!(std::isfinite(b_) && b_ > 0.0)) throw DomainError("QuadratureRule: b must be positive");
  if (weights_.size() != nodes_.size()) {
    throw DomainError("QuadratureRule: one weight per node required");
  }
  if (nodes_.front() < 0.0 || nodes_.back() > b_) {
    throw DomainError("QuadratureRule: nodes must lie in [0,b]");
  }
  if (m_ < 0) throw DomainError("QuadratureRule: design degree must be non-negative");
  if (annihilation_degree(functional(), m_, kExactnessTol) < m_) {
    throw DomainError("QuadratureRule: rule is not exact on polynomials of degree " +
                      std::to_string(m_));
  }
}

LinearFunctional QuadratureRule::functional() const {
  std::vector<PointTerm> pts;
  for (std::size_t k = 0; k < nodes_.size(); ++k) pts.push_back({-weights_[k], nodes_[k]});
  return LinearFunctional(std::move(pts), {{1.0, 0.0, b_}}, 0.0, b_, q_);
}

double QuadratureRule::apply(const FunctionSpec& f) const {
  double s = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) s += weights_[k] * f(nodes_[k]);
  return s;
}

// ----------------------------------------------------------------- trapezoid

double q_trapezoid(const FunctionSpec& f, double a, double b, QParam q) {
  q.require_inverse_base("q_trapezoid");
  if (!(a < b)) throw DomainError("q_trapezoid: need a < b");
  const double Q = q.value();
  return ((b - a * Q) * f(a) + (b * Q - a) * f(b)) / q_int(2, q);
}

LinearFunctional trapezoid_functional(double a, double b, QParam q) {
  const double Q = q.value();
  const double q2 = q_int(2, q);
  return LinearFunctional({{-(b - a * Q) / q2, a}, {-(b * Q - a) / q2, b}}, {{1.0, a, b}}, a, b, q);
}

double trapezoid_error_constant(double a, double b, QParam q) {
  const double Q = q.value();
  return -Q * (b - a) * (b * Q - a) * (b - a * Q) / (q_factorial(3, q) * q_factorial(2, q));
}

double trapezoid_kernel(double a, double b, QParam q, double t) {
  if (t < a || t > b) return 0.0;
  return q.value() / q_int(2, q) * (b - t) * (a - t);
}

TrapezoidError trapezoid_error(const FunctionSpec& f, double a, double b, QParam q,
                               const IntegralConfig& cfg) {
  TrapezoidError out;
  out.actual = jackson_integral_ab(f, a, b, q.inverse(), cfg).value - q_trapezoid(f, a, b, q);

  const Polynomial kernel =
      Polynomial::linear(b, -1.0) * Polynomial::linear(a, -1.0) * (q.value() / q_int(2, q));
  const Integrand G = Integrand::of(PiecewisePolynomial({a, b}, {kernel}, 0.0));
  const RealFunction d2 = q_derivative_function(f, 2, q.inverse());
  const double Q = q.value();
  const RealFunction F = [d2, Q](double t) { return d2(Q * t); };
  try {
    if (const auto xi = mean_value_xi(Integrand::plain(F), G, a, b, q, cfg)) {
      out.xi = *xi;
      out.mean_value_bound = trapezoid_error_constant(a, b, q) * F(*xi);
    }
  } catch (const DomainError&) {
    // derivative not evaluable somewhere on the scan (e.g. at t = 0)
  }
  return out;
}

// ------------------------------------------------------------ general rules

double quad_kernel(const QuadratureRule& rule, double t) {
  const QParam q = rule.q();
  const int m = rule.design_degree();
  const double b = rule.b();
  if (t < 0.0 || t > b) throw DomainError("quad_kernel: t outside [0,b]");

  // q^{m(m+3)/2} (b - t/q)^{m+1,q} / [m+1]_q!
  const double moment = std::pow(q.value(), 0.5 * m * (m + 3)) *
                        q_pochhammer_power(b, t / q.value(), m + 1, q) / q_factorial(m + 1, q);
  double spline = 0.0;
  for (std::size_t k = 0; k < rule.nodes().size(); ++k) {
    spline += rule.weights()[k] * truncated_q_power(rule.nodes()[k], t, m, q);
  }
  spline *= q_triangular_power(m, q) / q_factorial(m, q);
  return moment - spline;
}

double kernel_l2_objective(const QuadratureRule& rule) {
  const PeanoKernel K(rule.functional(), rule.design_degree());
  const auto& br = K.pieces().breakpoints();
  const auto& pieces = K.pieces().pieces();
  double total = 0.0;
  for (std::size_t r = 0; r < pieces.size(); ++r) {
    total += polynomial_jackson_integral(pieces[r] * pieces[r], br[r], br[r + 1], rule.q().inverse());
  }
  return total;
}

double remainder_bound(const QuadratureRule& rule, const FunctionSpec& f, HolderExponent p1,
                       const IntegralConfig& cfg) {
  cfg.validate();
  const QParam q = rule.q();
  const int m = rule.design_degree();
  const double p = 1.0 / q.value();
  const PeanoKernel K(rule.functional(), m);
  const auto& br = K.pieces().breakpoints();
  const auto& pieces = K.pieces().pieces();

  // The reconstruction integral sum_r [J_r(hi) - J_r(lo)] is a finite signed
  // sum over lattice points; Hoelder is applied to that discrete measure.
  std::vector<Atom> atoms;
  const auto add_series = [&](const Polynomial& piece, double c, double sign) {
    if (c == 0.0) return;
    double total = 0.0;
    int small = 0;
    double point = c;
    for (int i = 0; i < cfg.max_terms; ++i, point *= p) {
      if (point == 0.0) break;
      const double w = sign * (1.0 - p) * point;
      const double v = w * piece(point);
      atoms.push_back({point, w, v});
      total += std::abs(v);
      small = std::abs(v) <= cfg.rel_tol * total + std::numeric_limits<double>::min() ? small + 1 : 0;
      if (small >= 3 && i >= 64) break;  // as in jackson_series: leading exact zeros do not count
    }
  };
  for (std::size_t r = 0; r < pieces.size(); ++r) {
    add_series(pieces[r], br[r + 1], 1.0);
    add_series(pieces[r], br[r], -1.0);
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.point < y.point; });

  const double qm = std::pow(q.value(), m);
  const RealFunction deriv = q_derivative_function(f, m + 1, q.inverse());
  double sup_f = 0.0, sum_abs = 0.0, f_mass = 0.0, g_mass = 0.0;
  for (std::size_t i = 0; i < atoms.size();) {
    std::size_t j = i;
    double w_net = 0.0, w_abs = 0.0, v = 0.0;
    const double tol = 1e-12 * std::abs(atoms[i].point);
    while (j < atoms.size() && atoms[j].point - atoms[i].point <= tol) {
      w_net += atoms[j].weight;
      w_abs += std::abs(atoms[j].weight);
      v += atoms[j].value;
      ++j;
    }
    if (v != 0.0) {
      const double F = deriv(qm * atoms[i].point);
      const double mu = std::abs(w_net) >= 1e-9 * w_abs ? std::abs(w_net) : w_abs;
      sup_f = std::max(sup_f, std::abs(F));
      sum_abs += std::abs(v);
      f_mass += mu * F * F;
      g_mass += v * v / mu;
    }
    i = j;
  }
  if (p1 == HolderExponent::Infinity) return sup_f * sum_abs;
  return std::sqrt(f_mass) * std::sqrt(g_mass);
}

std::vector<double> optimize_weights_l2(const KnotVector& nodes, int m, double b, QParam q,
                                        const IntegralConfig& cfg) {
  cfg.validate();
  q.require_inverse_base("optimize_weights_l2");
  if (m < 0) throw DomainError("optimize_weights_l2: m must be non-negative");
  if (!(b > 0.0) || nodes.front() < 0.0 || nodes.back() > b) {
    throw DomainError("optimize_weights_l2: nodes must lie in [0,b] with b > 0");
  }
  const auto N = static_cast<Eigen::Index>(nodes.size());
  const Eigen::Index M = m + 1;
  if (N < M) throw DomainError("optimize_weights_l2: need at least m+1 nodes");

  // K = P - c sum_k gamma_k B_k with B_k = (t_k - t)_+^{m,q}; each piece of
  // [0,b] between consecutive cuts contributes exact polynomial integrals.
  const QParam base = q.inverse();
  const double c = q_triangular_power(m, q) / q_factorial(m, q);
  const Polynomial P = moment_polynomial(b, m, q);
  std::vector<Polynomial> B;
  for (Eigen::Index k = 0; k < N; ++k) B.push_back(node_power(nodes[k], m, q) * c);

  const auto cuts = rule_cuts(nodes, b);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(N, N);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(N);
  for (std::size_t r = 0; r + 1 < cuts.size(); ++r) {
    const double lo = cuts[r], hi = cuts[r + 1];
    const double anchor = 0.5 * (lo + hi);
    for (Eigen::Index k = 0; k < N; ++k) {
      if (nodes[k] <= anchor) continue;
      h(k) += polynomial_jackson_integral(P * B[k], lo, hi, base);
      for (Eigen::Index l = k; l < N; ++l) {
        if (nodes[l] <= anchor) continue;
        const double g = polynomial_jackson_integral(B[k] * B[l], lo, hi, base);
        G(k, l) += g;
        if (l != k) G(l, k) += g;
      }
    }
  }

  // Exactness constraints A gamma = e: sum_k gamma_k t_k^j = int_0^b x^j.
  Eigen::MatrixXd A(M, N);
  Eigen::VectorXd e(M);
  for (Eigen::Index j = 0; j < M; ++j) {
    for (Eigen::Index k = 0; k < N; ++k) A(j, k) = std::pow(nodes[k], static_cast<double>(j));
    e(j) = std::pow(b, j + 1) / q_int(static_cast<int>(j) + 1, base);
  }

  // Null-space method: gamma = gamma_p + Z z, Z spanning ker A.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(A.transpose());
  const Eigen::MatrixXd Qfull = qr.householderQ() * Eigen::MatrixXd::Identity(N, N);
  const Eigen::MatrixXd R = qr.matrixQR().topRows(M).triangularView<Eigen::Upper>();
  const double rmax = R.diagonal().cwiseAbs().maxCoeff();
  if (!(rmax > 0.0) || R.diagonal().cwiseAbs().minCoeff() <= 1e-13 * rmax) {
    throw DomainError("optimize_weights_l2: exactness constraints are degenerate");
  }
  const Eigen::VectorXd y = R.transpose().triangularView<Eigen::Lower>().solve(e);
  Eigen::VectorXd gamma = Qfull.leftCols(M) * y;

  if (N > M) {
    const Eigen::MatrixXd Z = Qfull.rightCols(N - M);
    const Eigen::MatrixXd H = Z.transpose() * G * Z;
    const Eigen::VectorXd rhs = Z.transpose() * (h - G * gamma);
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    const double hmax = H.diagonal().cwiseAbs().maxCoeff();
    if (ldlt.info() != Eigen::Success || !(hmax > 0.0) ||
        ldlt.vectorD().minCoeff() <= 1e-13 * hmax) {
      throw DomainError("optimize_weights_l2: normal matrix is singular");
    }
    gamma += Z * ldlt.solve(rhs);
  }

  std::vector<double> w(gamma.data(), gamma.data() + gamma.size());
  // Re-validates exactness on P_m.
  (void)QuadratureRule(nodes, w, b, q, m);
  return w;
}

}  // namespace qpeano
