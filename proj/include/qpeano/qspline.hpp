#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qpeano/funcrep.hpp"
#include "qpeano/interp.hpp"
#include "qpeano/qcalc.hpp"

namespace qpeano {

/// Newton divided differences; table()[k][i] = f[t_i, ..., t_{i+k}].
class DividedDifferenceTable {
 public:
  DividedDifferenceTable(KnotVector knots, std::vector<double> values);

  const KnotVector& knots() const noexcept { return knots_; }
  const std::vector<std::vector<double>>& table() const noexcept { return table_; }
  /// f[t_0, ..., t_N]
  double top() const { return table_.back().front(); }

 private:
  KnotVector knots_;
  std::vector<std::vector<double>> table_;
};

/// f[t_0,...,t_N] through the recursive table.
double divided_difference(const FunctionSpec& f, const KnotVector& knots);

/// sum_i f(t_i) / prod_{j != i} (t_i - t_j).
double divided_difference_symmetric(const FunctionSpec& f, const KnotVector& knots);
double divided_difference_symmetric(const std::vector<double>& values, const KnotVector& knots);

/// N_{k,n}(t;q) = (t_{k+n+1} - t_k) [t_k,...,t_{k+n+1}] (x - t)_+^{n,q}.
///
/// The divided difference runs over x, the first argument of the truncated
/// power; t is the point where the spline is evaluated.
double q_bspline(std::size_t k, int n, const KnotVector& knots, double t, QParam q);

/// The same spline as polynomial pieces on [t_k, t_{k+n+1}], zero outside.
PiecewisePolynomial q_bspline_piecewise(std::size_t k, int n, const KnotVector& knots, QParam q);

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = f[t_0,...,t_{n+1}];
/// rhs = q^{n(n+1)/2}/[n]_q! int_a^b N_{0,n}(t;q)/(t_{n+1}-t_0) (D_{1/q}^{n+1} f)(q^n t) d_{1/q}t,
/// with n = knots.size() - 2 and [a,b] defaulting to [t_0, t_{n+1}].
IdentitySides divdiff_integral_identity(const FunctionSpec& f, const KnotVector& knots, QParam q,
                                        const IntegralConfig& cfg = {},
                                        std::optional<double> a = std::nullopt,
                                        std::optional<double> b = std::nullopt);

}  // namespace qpeano
