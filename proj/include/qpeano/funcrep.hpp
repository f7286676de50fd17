#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpeano/qarith.hpp"

namespace qpeano {

/// Dense polynomial, coeffs()[k] multiplies x^k.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial monomial(int k, double scale = 1.0);
  /// c0 + c1 x
  static Polynomial linear(double c0, double c1) { return Polynomial({c0, c1}); }

  /// Index of the last stored coefficient; -1 for the empty (zero) polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double coeff(int k) const noexcept;

  /// Horner evaluation.
  double operator()(double x) const noexcept;

  /// Exact q-derivative by the rule D_q x^k = [k]_q x^{k-1}; `base` is the q used.
  Polynomial q_derivative(QParam base) const;
  Polynomial q_derivative(int order, QParam base) const;
  Polynomial derivative() const;
  /// x -> p(scale * x)
  Polynomial scaled_argument(double scale) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  std::vector<double> coeffs_;
};

/// Piecewise polynomial on half-open intervals [b_i, b_{i+1}); `outside` elsewhere.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<double> breakpoints, std::vector<Polynomial> pieces,
                      double outside = 0.0);

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<Polynomial>& pieces() const noexcept { return pieces_; }
  double outside() const noexcept { return outside_; }

  /// Index of the piece whose interval contains x, or nullopt outside.
  std::optional<std::size_t> piece_index(double x) const noexcept;
  double operator()(double x) const noexcept;
  /// Evaluates at x the polynomial that is active at `anchor` (the constant
  /// `outside` if the anchor is outside the breakpoint range).
  double evaluate_extension(double x, double anchor) const noexcept;

  /// Piece-by-piece q-derivative (outside value becomes 0).
  PiecewisePolynomial q_derivative(QParam base) const;
  /// Piece-by-piece classical derivative.
  PiecewisePolynomial derivative() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<Polynomial> pieces_;
  double outside_ = 0.0;
};

/// A named black-box evaluator. Builtins come from a registry so the CLI can
/// refer to them; `custom` wraps an arbitrary closure for library callers.
class BuiltinFunction {
 public:
  using Evaluator = std::function<double(double)>;

  static BuiltinFunction make(const std::string& name, std::map<std::string, double> params = {});
  static BuiltinFunction custom(std::string name, Evaluator fn);
  static std::vector<std::string> registered_names();

  const std::string& name() const noexcept { return name_; }
  const std::map<std::string, double>& params() const noexcept { return params_; }
  bool is_registered() const noexcept { return registered_; }
  double operator()(double x) const { return (*fn_)(x); }

 private:
  BuiltinFunction(std::string name, std::map<std::string, double> params,
                  std::shared_ptr<const Evaluator> fn, bool registered);

  std::string name_;
  std::map<std::string, double> params_;
  std::shared_ptr<const Evaluator> fn_;
  bool registered_ = false;
};

/// The function representations every other module consumes.  Immutable after
/// construction; cheap to copy.
class FunctionSpec {
 public:
  using Variant = std::variant<Polynomial, PiecewisePolynomial, BuiltinFunction>;

  FunctionSpec(Polynomial p) : v_(std::move(p)) {}                // NOLINT
  FunctionSpec(PiecewisePolynomial p) : v_(std::move(p)) {}       // NOLINT
  FunctionSpec(BuiltinFunction f) : v_(std::move(f)) {}           // NOLINT

  const Variant& variant() const noexcept { return v_; }
  const Polynomial* polynomial() const noexcept { return std::get_if<Polynomial>(&v_); }
  const PiecewisePolynomial* piecewise() const noexcept {
    return std::get_if<PiecewisePolynomial>(&v_);
  }
  const BuiltinFunction* builtin() const noexcept { return std::get_if<BuiltinFunction>(&v_); }

  double operator()(double x) const;
  double evaluate_extension(double x, double anchor) const;
  /// Breakpoints of the piecewise variant; empty otherwise.
  std::vector<double> breakpoints() const;

 private:
  Variant v_;
};

inline double evaluate(const FunctionSpec& f, double x) { return f(x); }

/// The piecewise cubic with knots {0,1,2,3,4} used as the example of a function
/// that is 1/q-twice differentiable but not classically C^1 (for q != 1).
FunctionSpec example2_spline(QParam q);
PiecewisePolynomial example2_spline_pieces(QParam q);

}  // namespace qpeano
