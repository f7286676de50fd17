#include "qpeano/funcrep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpeano {

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::monomial(int k, double scale) {
  if (k < 0) throw std::invalid_argument("monomial degree must be non-negative");
  std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
  c.back() = scale;
  return Polynomial(std::move(c));
}

double Polynomial::coeff(int k) const noexcept {
  if (k < 0 || k > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::q_derivative(QParam base) const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<double> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    out[k - 1] = q_int(static_cast<int>(k), base) * coeffs_[k];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::q_derivative(int order, QParam base) const {
  Polynomial p = *this;
  for (int i = 0; i < order; ++i) p = p.q_derivative(base);
  return p;
}

Polynomial Polynomial::derivative() const { return q_derivative(QParam(1.0)); }

Polynomial Polynomial::scaled_argument(double scale) const {
  std::vector<double> out = coeffs_;
  double power = 1.0;
  for (double& c : out) {
    c *= power;
    power *= scale;
  }
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial();
  std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

// ------------------------------------------------------- PiecewisePolynomial

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breakpoints,
                                         std::vector<Polynomial> pieces, double outside)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), outside_(outside) {
  if (breakpoints_.size() < 2) {
    throw DomainError("piecewise polynomial needs at least two breakpoints");
  }
  if (pieces_.size() != breakpoints_.size() - 1) {
    throw DomainError("piecewise polynomial needs exactly one piece per interval");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (std::isnan(breakpoints_[i])) throw DomainError("breakpoint is NaN");
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])) {
      throw DomainError("breakpoints must be strictly increasing");
    }
  }
}

std::optional<std::size_t> PiecewisePolynomial::piece_index(double x) const noexcept {
  if (!(x >= breakpoints_.front()) || !(x < breakpoints_.back())) return std::nullopt;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

double PiecewisePolynomial::operator()(double x) const noexcept {
  return evaluate_extension(x, x);
}

double PiecewisePolynomial::evaluate_extension(double x, double anchor) const noexcept {
  const auto idx = piece_index(anchor);
  return idx ? pieces_[*idx](x) : outside_;
}

PiecewisePolynomial PiecewisePolynomial::q_derivative(QParam base) const {
  std::vector<Polynomial> d;
  d.reserve(pieces_.size());
  for (const auto& p : pieces_) d.push_back(p.q_derivative(base));
  return PiecewisePolynomial(breakpoints_, std::move(d), 0.0);
}

PiecewisePolynomial PiecewisePolynomial::derivative() const { return q_derivative(QParam(1.0)); }

// ----------------------------------------------------------- BuiltinFunction

namespace {

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

using Factory = BuiltinFunction::Evaluator (*)(const std::map<std::string, double>&);

const std::map<std::string, Factory>& registry() {
  static const std::map<std::string, Factory> table = {
      {"monomial",
       [](const std::map<std::string, double>& p) -> BuiltinFunction::Evaluator {
         const double power = param_or(p, "power", 1.0);
         const double scale = param_or(p, "scale", 1.0);
         if (power < 0.0 || power != std::floor(power)) {
           throw DomainError("builtin monomial: power must be a non-negative integer");
         }
         const int k = static_cast<int>(power);
         return [k, scale](double x) { return scale * std::pow(x, k); };
       }},
      {"exp",
       [](const std::map<std::string, double>& p) -> BuiltinFunction::Evaluator {
         const double rate = param_or(p, "rate", 1.0);
         const double scale = param_or(p, "scale", 1.0);
         return [rate, scale](double x) { return scale * std::exp(rate * x); };
       }},
      {"sin",
       [](const std::map<std::string, double>& p) -> BuiltinFunction::Evaluator {
         const double freq = param_or(p, "freq", 1.0);
         const double scale = param_or(p, "scale", 1.0);
         return [freq, scale](double x) { return scale * std::sin(freq * x); };
       }},
      {"example2_spline",
       [](const std::map<std::string, double>& p) -> BuiltinFunction::Evaluator {
         auto spline = example2_spline_pieces(QParam(param_or(p, "q", 2.0)));
         return [spline = std::move(spline)](double x) { return spline(x); };
       }},
  };
  return table;
}

}  // namespace

BuiltinFunction::BuiltinFunction(std::string name, std::map<std::string, double> params,
                                 std::shared_ptr<const Evaluator> fn, bool registered)
    : name_(std::move(name)), params_(std::move(params)), fn_(std::move(fn)),
      registered_(registered) {}

BuiltinFunction BuiltinFunction::make(const std::string& name, std::map<std::string, double> params) {
  const auto& table = registry();
  auto it = table.find(name);
  if (it == table.end()) throw DomainError("unknown builtin function '" + name + "'");
  auto fn = std::make_shared<const Evaluator>(it->second(params));
  return BuiltinFunction(name, std::move(params), std::move(fn), true);
}

BuiltinFunction BuiltinFunction::custom(std::string name, Evaluator fn) {
  if (!fn) throw std::invalid_argument("custom builtin needs a callable");
  return BuiltinFunction(std::move(name), {}, std::make_shared<const Evaluator>(std::move(fn)),
                         false);
}

std::vector<std::string> BuiltinFunction::registered_names() {
  std::vector<std::string> names;
  for (const auto& [name, factory] : registry()) names.push_back(name);
  return names;
}

// -------------------------------------------------------------- FunctionSpec

double FunctionSpec::operator()(double x) const {
  return std::visit([x](const auto& f) { return f(x); }, v_);
}

double FunctionSpec::evaluate_extension(double x, double anchor) const {
  if (const auto* pw = piecewise()) return pw->evaluate_extension(x, anchor);
  return (*this)(x);
}

std::vector<double> FunctionSpec::breakpoints() const {
  if (const auto* pw = piecewise()) return pw->breakpoints();
  return {};
}

PiecewisePolynomial example2_spline_pieces(QParam q) {
  const double Q = q.value();
  const double q3 = q_int(3, q);
  const double cube = Q * Q * Q;
  std::vector<Polynomial> pieces = {
      Polynomial({0.0, 0.0, 0.0, cube / 6.0}),
      Polynomial({4.0 / 6.0, -4.0 * q3 / 6.0, 4.0 * Q * q3 / 6.0, -3.0 * cube / 6.0}),
      Polynomial({-44.0 / 6.0, 20.0 * q3 / 6.0, -8.0 * Q * q3 / 6.0, 3.0 * cube / 6.0}),
      // -(x-4)(qx-4)(q^2x-4)/6
      Polynomial::linear(-4.0, 1.0) * Polynomial::linear(-4.0, Q) *
          Polynomial::linear(-4.0, Q * Q) * (-1.0 / 6.0),
  };
  return PiecewisePolynomial({0.0, 1.0, 2.0, 3.0, 4.0}, std::move(pieces), 0.0);
}

FunctionSpec example2_spline(QParam q) { return FunctionSpec(example2_spline_pieces(q)); }

}  // namespace qpeano
