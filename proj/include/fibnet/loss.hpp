#pragma once

// Least-squares training objective for
//
//   D^{a_m} y(x) = f(x, y, D^{a_1} y, ..., D^{a_{m-1}} y),   y^(k)(0) = y0_k,
//
// with the residual r_p = D^{a_m} N(x_p) - f(...) at each training point and
//
//   E = 1/(2P) sum_p r_p^2 + 1/2 sum_k (N^(k)(0) - y0_k)^2.

#include <cstddef>
#include <string>
#include <vector>

#include "fibnet/basis.hpp"
#include "fibnet/expr.hpp"
#include "fibnet/linalg.hpp"
#include "fibnet/model.hpp"

namespace fibnet {

struct InitialCondition {
  std::size_t k = 0;  // derivative order
  double value = 0.0;

  friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

struct Interval {
  double a = 0.0;
  double b = 1.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A fractional initial value problem plus its discretisation.
///
/// The rhs may use x (or its alias t), y, and d1..d{m-1}, where d_i stands
/// for D^{orders[i-1]} y. The last order is the leading one.
struct ProblemSpec {
  std::vector<FractionalOrder> orders;
  Expr rhs;
  std::vector<InitialCondition> ics;
  Interval domain;
  std::size_t num_points = 10;
  std::size_t basis_size = 3;
  /// Explicit training points; when empty a uniform grid is used.
  std::vector<double> grid;

  FractionalOrder leading_order() const;
  /// Number of required initial conditions, ceil(leading order).
  std::size_t num_ics() const;

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;

  /// x_p = a + p (b - a) / P for p = 1..P, unless `grid` is set.
  std::vector<double> training_points() const;
};

/// Name of the variable bound to D^{orders[i]} y in the rhs (0-based i).
std::string derivative_variable(std::size_t i);

struct LossParts {
  double cost = 0.0;
  std::vector<double> grad;
  Matrix hess;
};

/// Cost, gradient and Gauss-Newton Hessian of a ProblemSpec.
///
/// Builds the basis cache and the symbolic partials df/dy, df/dd_i once;
/// each evaluation afterwards costs O(n^2 P).
class Objective {
 public:
  /// Validates the problem; throws UnsupportedDiffError if the rhs cannot be
  /// differentiated with respect to y or d_i.
  explicit Objective(ProblemSpec problem);

  const ProblemSpec& problem() const noexcept { return problem_; }
  const BasisCache& cache() const noexcept { return cache_; }

  double residual(const Network& net, std::size_t p) const;
  double cost(const Network& net) const;
  std::vector<double> gradient(const Network& net) const;
  Matrix gauss_newton_hessian(const Network& net) const;

  /// All three in one pass over the points.
  LossParts evaluate(const Network& net) const;

 private:
  struct PointState {
    Env env;
    double leading = 0.0;  // D^{a_m} N(x_p)
  };

  PointState point_state(const Network& net, std::size_t p) const;
  /// d r_p / d w_l for every l.
  std::vector<double> residual_jacobian(const PointState& st, std::size_t p) const;
  double penalty(const Network& net) const;

  ProblemSpec problem_;
  BasisCache cache_;
  std::size_t leading_slot_ = 0;
  std::vector<std::size_t> lower_slots_;
  Expr df_dy_;
  std::vector<Expr> df_dd_;
};

}  // namespace fibnet
