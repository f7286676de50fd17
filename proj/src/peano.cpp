#include "qpeano/peano.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qpeano {

namespace {

constexpr double kPointSlack = 1e-12;

bool inside(double v, double a, double b) {
  const double slack = kPointSlack * (1.0 + std::abs(a) + std::abs(b));
  return v >= a - slack && v <= b + slack;
}

/// Pochhammer power (x - t)^{n,q} as a polynomial in t for fixed x.
Polynomial pochhammer_in_t(double x, int n, QParam q) {
  Polynomial p = Polynomial::constant(1.0);
  double qj = 1.0;
  for (int j = 0; j < n; ++j) {
    p = p * Polynomial::linear(x, -qj);
    qj *= q.value();
  }
  return p;
}

/// H(s,t) = prod_{j=0}^{n} (s - q^{j-1} t), the 1/q-antiderivative in s of
/// (s-t)^{n,q} up to the factor [n+1]_{1/q}.
double antiderivative_value(double s, double t, int n, QParam q) {
  double prod = 1.0;
  double qj = 1.0 / q.value();
  for (int j = 0; j <= n; ++j) {
    prod *= s - qj * t;
    qj *= q.value();
  }
  return prod;
}

Polynomial antiderivative_in_t(double s, int n, QParam q) {
  Polynomial p = Polynomial::constant(1.0);
  double qj = 1.0 / q.value();
  for (int j = 0; j <= n; ++j) {
    p = p * Polynomial::linear(s, -qj);
    qj *= q.value();
  }
  return p;
}

/// Exact int_lo^hi (s-t)_+^{n,q} d_{1/q}s, split at s = t.
///
/// The lower limit t contributes H(t,t), which vanishes for n >= 1.  For n = 0
/// the step is taken closed at s = t: the Jackson sum int_a^x g d_{1/q}t samples
/// its own endpoint t = x, so exchanging the order of integration yields
/// hi - t/q (not hi - t) on [lo,hi).  That is H(hi,t) alone.
double truncated_power_integral(double lo, double hi, double t, int n, QParam q) {
  double sign = 1.0;
  if (lo > hi) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  const double denom = q_int(n + 1, q.inverse());
  if (t > hi) return 0.0;  // at t = hi only the closed n = 0 step survives: H(hi,hi)
  const double lower = t <= lo ? antiderivative_value(lo, t, n, q) : 0.0;
  return sign * (antiderivative_value(hi, t, n, q) - lower) / denom;
}

PiecewisePolynomial build_kernel_pieces(const LinearFunctional& L, int n, double prefactor) {
  const QParam q = L.q();
  std::vector<double> br = L.support_points();
  br.push_back(L.a());
  br.push_back(L.b());
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());

  const auto support = L.support_points();
  const double first_point = support.empty() ? L.b() : support.front();
  const double denom = q_int(n + 1, q.inverse());

  std::vector<Polynomial> pieces;
  for (std::size_t r = 0; r + 1 < br.size(); ++r) {
    const double anchor = 0.5 * (br[r] + br[r + 1]);
    Polynomial piece;
    // Left of every point the kernel is L applied to a polynomial of degree n.
    if (anchor > first_point) {
      for (const auto& pt : L.point_terms()) {
        if (pt.x > anchor) piece += pochhammer_in_t(pt.x, n, q) * pt.coef;
      }
      for (const auto& it : L.integral_terms()) {
        double lo = it.lo, hi = it.hi, sign = 1.0;
        if (lo > hi) {
          std::swap(lo, hi);
          sign = -1.0;
        }
        if (anchor >= hi) continue;
        const Polynomial lower = anchor < lo ? antiderivative_in_t(lo, n, q) : Polynomial();
        piece += (antiderivative_in_t(hi, n, q) - lower) * (sign * it.weight / denom);
      }
    }
    pieces.push_back(piece * prefactor);
  }
  return PiecewisePolynomial(std::move(br), std::move(pieces), 0.0);
}

}  // namespace

// --------------------------------------------------------- LinearFunctional

LinearFunctional::LinearFunctional(std::vector<PointTerm> points,
                                   std::vector<IntegralTerm> integrals, double a, double b,
                                   QParam q)
    : points_(std::move(points)), integrals_(std::move(integrals)), a_(a), b_(b), q_(q) {
  q_.require_inverse_base("LinearFunctional");
  if (!(std::isfinite(a_) && std::isfinite(b_) && a_ < b_)) {
    throw DomainError("LinearFunctional: domain must be a finite interval with a < b");
  }
  for (const auto& p : points_) {
    if (!std::isfinite(p.coef) || !inside(p.x, a_, b_)) {
      throw DomainError("LinearFunctional: point term outside [a,b] at x = " + std::to_string(p.x));
    }
  }
  for (const auto& t : integrals_) {
    if (!std::isfinite(t.weight) || !inside(t.lo, a_, b_) || !inside(t.hi, a_, b_)) {
      throw DomainError("LinearFunctional: integral term outside [a,b]");
    }
  }
}

double LinearFunctional::monomial_value(int k) const {
  double sum = 0.0;
  for (const auto& p : points_) sum += p.coef * std::pow(p.x, k);
  const Polynomial mono = Polynomial::monomial(k);
  for (const auto& t : integrals_) {
    sum += t.weight * polynomial_jackson_integral(mono, t.lo, t.hi, q_.inverse());
  }
  return sum;
}

double LinearFunctional::monomial_scale(int k) const {
  double s = 1.0;
  for (const auto& p : points_) s += std::abs(p.coef) * std::pow(std::abs(p.x), k);
  for (const auto& t : integrals_) {
    const double reach = std::max(std::abs(t.lo), std::abs(t.hi));
    s += std::abs(t.weight) * std::abs(t.hi - t.lo) * std::pow(reach, k);
  }
  return s;
}

std::vector<double> LinearFunctional::support_points() const {
  std::vector<double> pts;
  for (const auto& p : points_) pts.push_back(p.x);
  for (const auto& t : integrals_) {
    if (t.lo == t.hi) continue;
    pts.push_back(t.lo);
    pts.push_back(t.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double apply(const LinearFunctional& L, const FunctionSpec& f, const IntegralConfig& cfg) {
  double sum = 0.0;
  for (const auto& p : L.point_terms()) sum += p.coef * f(p.x);
  for (const auto& t : L.integral_terms()) {
    sum += t.weight * jackson_integral_ab(f, t.lo, t.hi, L.q().inverse(), cfg).value;
  }
  return sum;
}

int annihilation_degree(const LinearFunctional& L, int max_n, double tol) {
  if (max_n < 0) throw std::invalid_argument("annihilation_degree: max_n must be >= 0");
  int degree = -1;
  for (int k = 0; k <= max_n; ++k) {
    if (std::abs(L.monomial_value(k)) > tol * L.monomial_scale(k)) break;
    degree = k;
  }
  return degree;
}

// ---------------------------------------------------------------- PeanoKernel

PeanoKernel::PeanoKernel(LinearFunctional L, int n)
    : L_(std::move(L)),
      n_(n),
      prefactor_(n >= 0 ? q_triangular_power(n, L_.q()) / q_factorial(n, L_.q()) : 0.0),
      pieces_([&] {
        if (n < 0) throw std::invalid_argument("PeanoKernel: degree must be non-negative");
        if (annihilation_degree(L_, n) < n) {
          throw DomainError("PeanoKernel: functional does not annihilate polynomials of degree " +
                            std::to_string(n));
        }
        return build_kernel_pieces(L_, n, prefactor_);
      }()) {}

double kernel_value(const PeanoKernel& K, double t) {
  const LinearFunctional& L = K.functional();
  if (!(t >= L.a() && t <= L.b())) {
    throw DomainError("kernel_value: t = " + std::to_string(t) + " lies outside [a,b]");
  }
  const int n = K.degree();
  double sum = 0.0;
  for (const auto& p : L.point_terms()) sum += p.coef * truncated_q_power(p.x, t, n, L.q());
  for (const auto& it : L.integral_terms()) {
    sum += it.weight * truncated_power_integral(it.lo, it.hi, t, n, L.q());
  }
  return K.prefactor() * sum;
}

Integrand kernel_integrand(const PeanoKernel& K) { return Integrand::of(K.pieces()); }

IntegralResult reconstruct(const PeanoKernel& K, const FunctionSpec& f, const IntegralConfig& cfg) {
  const LinearFunctional& L = K.functional();
  const QParam q = L.q();
  const double qn = std::pow(q.value(), K.degree());
  const RealFunction deriv = q_derivative_function(f, K.degree() + 1, q.inverse());
  const Integrand integrand =
      Integrand::plain([deriv, qn](double t) { return deriv(qn * t); }) * kernel_integrand(K);
  return jackson_integral(integrand, L.a(), L.b(), q.inverse(), cfg);
}

std::optional<MeanValueForm> mean_value_form(const PeanoKernel& K, const FunctionSpec& f,
                                             const IntegralConfig& cfg) {
  const LinearFunctional& L = K.functional();
  const QParam q = L.q();
  const int n = K.degree();
  const Integrand kernel = kernel_integrand(K);
  const auto sign = constant_sign(kernel, L.a(), L.b(), q.inverse(), 4096);
  if (!sign) throw DomainError("mean_value_form: kernel changes sign on [a,b]");
  if (*sign == 0) return MeanValueForm{L.a(), 0.0};

  const double qn = std::pow(q.value(), n);
  const RealFunction deriv = q_derivative_function(f, n + 1, q.inverse());
  const RealFunction composed = [deriv, qn](double t) { return deriv(qn * t); };
  const auto xi = mean_value_xi(Integrand::plain(composed), kernel, L.a(), L.b(), q, cfg);
  if (!xi) return std::nullopt;
  const double kernel_mass = q_triangular_power(n, q) * L.monomial_value(n + 1) / q_factorial(n + 1, q);
  return MeanValueForm{*xi, composed(*xi) * kernel_mass};
}

}  // namespace qpeano
