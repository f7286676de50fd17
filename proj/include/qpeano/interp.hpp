#pragma once

#include <cstddef>
#include <vector>

#include "qpeano/funcrep.hpp"
#include "qpeano/peano.hpp"
#include "qpeano/qcalc.hpp"

namespace qpeano {

/// Strictly increasing, finite nodes.
class KnotVector {
 public:
  explicit KnotVector(std::vector<double> nodes);

  std::size_t size() const noexcept { return t_.size(); }
  double operator[](std::size_t i) const { return t_[i]; }
  const std::vector<double>& values() const noexcept { return t_; }
  double front() const { return t_.front(); }
  double back() const { return t_.back(); }

 private:
  std::vector<double> t_;
};

/// l_{nk}(x) = prod_{v != k} (x - t_v) / (t_k - t_v).
double lagrange_basis(const KnotVector& nodes, std::size_t k, double x);

/// f(x) - sum_k f(t_k) l_{nk}(x).
double interp_error_direct(const FunctionSpec& f, const KnotVector& nodes, double x);

/// q^{m(m+1)/2}/[m]_q! sum_k l_{nk}(x) int_{t_k}^{x} (t_k - t)^{m,q} (D_{1/q}^{m+1} f)(q^m t) d_{1/q}t
/// for 0 <= m <= n.  Equals interp_error_direct.
double kowalewski_remainder(const FunctionSpec& f, const KnotVector& nodes, double x, int m,
                            QParam q, const IntegralConfig& cfg = {});

/// The interpolation error at x as a LinearFunctional on [a,b] (defaults to
/// the hull of the nodes and x).
LinearFunctional lagrange_error_functional(const KnotVector& nodes, double x, QParam q);
LinearFunctional lagrange_error_functional(const KnotVector& nodes, double x, QParam q, double a,
                                           double b);

/// Piecewise kernel for nodes {-1,0,1}, m = 2, written out case by case; the
/// bracket only, i.e. the generic kernel divided by q^3/[2]_q!.  For x >= 0 and
/// 0 <= t < x the branch is l20 (-1-t)^{2,q} + l21 (-t)^{2,q}, with no node-1
/// term.
double example1_kernel(double x, double t, QParam q);

/// Piecewise kernel for nodes {0,2,4}, m = 1; the bracket only (generic
/// kernel divided by q).  Within x <= t the node-2 and node-4 terms both carry
/// a minus sign (and for x >= 2 only the node-4 term survives), which is what
/// L((x-t)_+) gives.
double example2_kernel(double x, double t, QParam q);

}  // namespace qpeano
