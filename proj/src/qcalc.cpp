#include "qpeano/qcalc.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <string>

namespace qpeano {

void IntegralConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0,1)");
  if (max_terms < 1) throw DomainError("max_terms must be at least 1");
}

// ----------------------------------------------------------------- Integrand

Integrand Integrand::plain(RealFunction f) {
  return Integrand{[f = std::move(f)](double t, double) { return f(t); }, {}};
}

Integrand Integrand::of(const FunctionSpec& f) {
  return Integrand{[f](double t, double anchor) { return f.evaluate_extension(t, anchor); },
                   f.breakpoints()};
}

Integrand Integrand::of(const PiecewisePolynomial& f) {
  return Integrand{[f](double t, double anchor) { return f.evaluate_extension(t, anchor); },
                   f.breakpoints()};
}

namespace {

std::vector<double> merge_breakpoints(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Integrand operator*(const Integrand& a, const Integrand& b) {
  return Integrand{[fa = a.eval, fb = b.eval](double t, double anchor) {
                     return fa(t, anchor) * fb(t, anchor);
                   },
                   merge_breakpoints(a.breakpoints, b.breakpoints)};
}

Integrand abs_pow(const Integrand& g, double p) {
  return Integrand{[fg = g.eval, p](double t, double anchor) {
                     const double v = std::abs(fg(t, anchor));
                     return p == 1.0 ? v : (p == 2.0 ? v * v : std::pow(v, p));
                   },
                   g.breakpoints};
}

// ------------------------------------------------------------ Jackson series

IntegralResult jackson_series(const RealFunction& f, double b, QParam base,
                              const IntegralConfig& cfg) {
  base.require_series_base("jackson_series");
  cfg.validate();
  IntegralResult r;
  if (b == 0.0) return r;
  const double p = base.value();
  const double one_minus_p = 1.0 - p;
  // Integrands such as (x - t)^{n,q} vanish exactly on the first lattice
  // points, so a run of tiny terms only counts once that stretch is behind us.
  constexpr int kMinTerms = 64;
  int small = 0;
  for (int i = 0; i < cfg.max_terms; ++i) {
    const double point = b * std::pow(p, i);
    if (point == 0.0) return r;
    const double term = one_minus_p * point * f(point);
    if (!std::isfinite(term)) {
      throw DomainError("Jackson series: integrand is not finite at t = " + std::to_string(point));
    }
    r.value += term;
    ++r.terms;
    if (std::abs(term) < cfg.rel_tol * (std::abs(r.value) + DBL_MIN)) {
      if (++small >= 3 && i >= kMinTerms) return r;
    } else {
      small = 0;
    }
  }
  r.converged = false;
  return r;
}

IntegralResult jackson_integral(const Integrand& g, double a, double b, QParam base,
                                const IntegralConfig& cfg) {
  base.require_series_base("jackson_integral");
  cfg.validate();
  IntegralResult r;
  if (a == b) return r;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double sign = a < b ? 1.0 : -1.0;

  std::vector<double> cuts{lo};
  for (double br : g.breakpoints) {
    if (br > lo && br < hi) cuts.push_back(br);
  }
  cuts.push_back(hi);

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double anchor = 0.5 * (cuts[i] + cuts[i + 1]);
    const RealFunction piece = [&g, anchor](double t) { return g.eval(t, anchor); };
    const IntegralResult upper = jackson_series(piece, cuts[i + 1], base, cfg);
    const IntegralResult lower = jackson_series(piece, cuts[i], base, cfg);
    r.value += upper.value - lower.value;
    r.terms += upper.terms + lower.terms;
    r.converged = r.converged && upper.converged && lower.converged;
  }
  r.value *= sign;
  return r;
}

IntegralResult jackson_integral_0b(const FunctionSpec& f, double b, QParam base,
                                   const IntegralConfig& cfg) {
  base.require_series_base("jackson_integral_0b");
  return jackson_integral(Integrand::of(f), 0.0, b, base, cfg);
}

IntegralResult jackson_integral_ab(const FunctionSpec& f, double a, double b, QParam base,
                                   const IntegralConfig& cfg) {
  base.require_series_base("jackson_integral_ab");
  return jackson_integral(Integrand::of(f), a, b, base, cfg);
}

double polynomial_jackson_integral(const Polynomial& p, double a, double b, QParam base) {
  if (base.value() > 1.0) {
    throw DomainError("polynomial_jackson_integral: base must lie in (0,1]");
  }
  double sum = 0.0;
  double pa = a;
  double pb = b;
  for (int k = 0; k <= p.degree(); ++k) {
    sum += p.coeff(k) * (pb - pa) / q_int(k + 1, base);
    pa *= a;
    pb *= b;
  }
  return sum;
}

// ------------------------------------------------------------- q-derivative

namespace {

double blackbox_q_derivative(const FunctionSpec& f, double t, int n, QParam base) {
  if (t == 0.0) {
    throw DomainError("q-derivative of a black-box function is undefined at t = 0");
  }
  const double q = base.value();
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  std::vector<double> points(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    points[j] = t * std::pow(q, static_cast<double>(j));
    v[j] = f(points[j]);
  }
  for (int k = 1; k <= n; ++k) {
    for (std::size_t j = 0; j + k < v.size(); ++j) {
      v[j] = (v[j + 1] - v[j]) / ((q - 1.0) * points[j]);
    }
  }
  return v[0];
}

void require_derivative_base(QParam base) {
  if (base.is_classical()) throw DomainError("q-derivative requires q != 1");
}

}  // namespace

double q_derivative(const FunctionSpec& f, double t, QParam base) {
  return q_derivative_n(f, t, 1, base);
}

double q_derivative_n(const FunctionSpec& f, double t, int n, QParam base) {
  if (n < 0) throw std::invalid_argument("q_derivative_n: order must be non-negative");
  require_derivative_base(base);
  if (n == 0) return f(t);
  if (const auto* poly = f.polynomial()) return poly->q_derivative(n, base)(t);
  return blackbox_q_derivative(f, t, n, base);
}

RealFunction q_derivative_function(const FunctionSpec& f, int n, QParam base) {
  if (n < 0) throw std::invalid_argument("q_derivative_function: order must be non-negative");
  require_derivative_base(base);
  if (const auto* poly = f.polynomial()) {
    return [d = poly->q_derivative(n, base)](double t) { return d(t); };
  }
  return [f, n, base](double t) { return q_derivative_n(f, t, n, base); };
}

// ------------------------------------------------------------------- norms

std::vector<double> jackson_points(double b, QParam base, int max_points) {
  base.require_series_base("jackson_points");
  std::vector<double> pts;
  const double p = base.value();
  for (int i = 0; i < max_points; ++i) {
    const double point = b * std::pow(p, i);
    if (point == 0.0) break;
    pts.push_back(point);
  }
  return pts;
}

double q_norm(const Integrand& f, double b, double p, QParam q, const IntegralConfig& cfg) {
  q.require_inverse_base("q_norm");
  if (!(b > 0.0)) throw DomainError("q_norm: b must be positive");
  if (!(p >= 1.0)) throw DomainError("q_norm: p must be >= 1");
  if (std::isinf(p)) {
    double sup = 0.0;
    for (double t : jackson_points(b, q.inverse(), cfg.max_terms)) sup = std::max(sup, std::abs(f(t)));
    for (double br : f.breakpoints) {
      if (br >= 0.0 && br <= b) sup = std::max(sup, std::abs(f(br)));
    }
    return sup;
  }
  const IntegralResult r = jackson_integral(abs_pow(f, p), 0.0, b, q.inverse(), cfg);
  return std::pow(r.value, 1.0 / p);
}

double q_norm(const FunctionSpec& f, double b, double p, QParam q, const IntegralConfig& cfg) {
  return q_norm(Integrand::of(f), b, p, q, cfg);
}

HolderSides holder_check(const FunctionSpec& f, const FunctionSpec& g, double x, double p1,
                         double p2, QParam q, const IntegralConfig& cfg) {
  q.require_inverse_base("holder_check");
  if (!(p1 > 1.0 && p2 > 1.0)) throw DomainError("holder_check: exponents must exceed 1");
  const double conj = (std::isinf(p1) ? 0.0 : 1.0 / p1) + (std::isinf(p2) ? 0.0 : 1.0 / p2);
  if (std::abs(conj - 1.0) > 1e-12) {
    throw DomainError("holder_check: exponents are not conjugate (1/p1 + 1/p2 != 1)");
  }
  if (x == 0.0) return {};
  const Integrand fi = Integrand::of(f);
  const Integrand gi = Integrand::of(g);
  HolderSides s;
  s.lhs = jackson_integral(abs_pow(fi, 1.0) * abs_pow(gi, 1.0), 0.0, x, q.inverse(), cfg).value;
  s.rhs = q_norm(fi, x, p1, q, cfg) * q_norm(gi, x, p2, q, cfg);
  return s;
}

// ------------------------------------------------------------ mean value

std::optional<int> constant_sign(const Integrand& g, double a, double b, QParam base, int grid) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  std::vector<double> samples;
  const int cells = std::max(grid, 2);
  for (int i = 0; i < cells; ++i) samples.push_back(lo + (hi - lo) * i / (cells - 1));
  std::vector<double> cuts{lo, hi};
  for (double br : g.breakpoints) {
    if (br >= lo && br <= hi) cuts.push_back(br);
  }
  for (double c : cuts) {
    samples.push_back(c);
    for (double t : jackson_points(c, base, 4000)) {
      if (t >= lo && t <= hi) samples.push_back(t);
      if (std::abs(t) < 1e-300) break;
    }
  }
  std::vector<double> values;
  values.reserve(samples.size());
  double scale = 0.0;
  for (double t : samples) {
    const double v = g(t);
    values.push_back(v);
    scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) return 0;
  const double zero = 1e-13 * scale;
  bool pos = false;
  bool neg = false;
  for (double v : values) {
    pos = pos || v > zero;
    neg = neg || v < -zero;
  }
  if (pos && neg) return std::nullopt;
  return pos ? 1 : -1;
}

std::optional<double> mean_value_xi(const Integrand& F, const Integrand& G, double a, double b,
                                    QParam q, const IntegralConfig& cfg, int cells) {
  q.require_inverse_base("mean_value_xi");
  if (!(a < b)) throw DomainError("mean_value_xi: requires a < b");
  if (!constant_sign(G, a, b, q.inverse(), cells + 1)) {
    throw DomainError("mean_value_xi: G changes sign on [a,b]");
  }
  const double num = jackson_integral(F * G, a, b, q.inverse(), cfg).value;
  const double den = jackson_integral(G, a, b, q.inverse(), cfg).value;
  if (den == 0.0) return std::nullopt;
  const double target = num / den;
  const double tol = 1e-10 * (1.0 + std::abs(target));
  auto h = [&](double x) { return F(x) - target; };

  double x0 = a;
  double h0 = h(x0);
  if (std::abs(h0) <= tol) return x0;
  for (int i = 1; i <= cells; ++i) {
    const double x1 = a + (b - a) * i / cells;
    const double h1 = h(x1);
    if (std::abs(h1) <= tol) return x1;
    if ((h0 < 0.0) != (h1 < 0.0)) {
      double l = x0, r = x1, hl = h0;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (l + r);
        const double hm = h(m);
        if (std::abs(hm) <= tol) return m;
        if (m == l || m == r) break;
        if ((hl < 0.0) == (hm < 0.0)) {
          l = m;
          hl = hm;
        } else {
          r = m;
        }
      }
    }
    x0 = x1;
    h0 = h1;
  }
  return std::nullopt;
}

std::optional<double> mean_value_xi(const FunctionSpec& F, const FunctionSpec& G, double a,
                                    double b, QParam q, const IntegralConfig& cfg) {
  return mean_value_xi(Integrand::of(F), Integrand::of(G), a, b, q, cfg);
}

}  // namespace qpeano
