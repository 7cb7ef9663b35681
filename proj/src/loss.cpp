#include "fibnet/loss.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fibnet/errors.hpp"

namespace fibnet {

// ---------------------------------------------------------------------------
// ProblemSpec

FractionalOrder ProblemSpec::leading_order() const {
  if (orders.empty()) throw ValidationError("orders must not be empty");
  return orders.back();
}

std::size_t ProblemSpec::num_ics() const { return leading_order().ceil(); }

std::string derivative_variable(std::size_t i) { return "d" + std::to_string(i + 1); }

void ProblemSpec::validate() const {
  if (orders.empty()) throw ValidationError("orders must not be empty");
  for (std::size_t i = 1; i < orders.size(); ++i) {
    if (!(orders[i - 1] < orders[i])) throw ValidationError("orders must be strictly increasing");
  }
  if (orders.size() > 10) throw ValidationError("at most 10 orders are supported (d1..d9)");

  const std::size_t needed = num_ics();
  std::vector<int> seen(needed, 0);
  for (const InitialCondition& ic : ics) {
    if (ic.k >= needed) {
      throw ValidationError("initial condition k=" + std::to_string(ic.k) +
                            " is not used: the leading order needs k = 0.." +
                            std::to_string(needed - 1));
    }
    if (!std::isfinite(ic.value)) {
      throw ValidationError("initial condition k=" + std::to_string(ic.k) + " is not finite");
    }
    if (seen[ic.k]++ > 0) {
      throw ValidationError("duplicate initial condition k=" + std::to_string(ic.k));
    }
  }
  for (std::size_t k = 0; k < needed; ++k) {
    if (seen[k] == 0) throw ValidationError("missing initial condition k=" + std::to_string(k));
  }

  std::set<std::string> allowed = {"x", "t", "y"};
  for (std::size_t i = 0; i + 1 < orders.size(); ++i) allowed.insert(derivative_variable(i));
  for (const std::string& name : rhs.variables()) {
    if (!allowed.contains(name)) {
      throw ValidationError("rhs references unknown variable '" + name + "'");
    }
  }

  if (!(std::isfinite(domain.a) && std::isfinite(domain.b) && domain.a >= 0.0 &&
        domain.a < domain.b)) {
    throw ValidationError("domain must satisfy 0 <= a < b");
  }
  if (num_points == 0) throw ValidationError("number of training points must be positive");
  if (!grid.empty()) {
    if (grid.size() != num_points) {
      throw ValidationError("explicit grid has " + std::to_string(grid.size()) +
                            " points but points = " + std::to_string(num_points));
    }
    for (double x : grid) {
      if (!(std::isfinite(x) && x >= 0.0)) {
        throw ValidationError("grid points must be finite and >= 0");
      }
    }
  }
  if (basis_size < needed + 1) {
    throw ValidationError("basis size must be at least ceil(leading order) + 1 = " +
                          std::to_string(needed + 1));
  }
}

std::vector<double> ProblemSpec::training_points() const {
  if (!grid.empty()) return grid;
  std::vector<double> pts(num_points);
  const double h = (domain.b - domain.a) / static_cast<double>(num_points);
  for (std::size_t p = 0; p < num_points; ++p) {
    pts[p] = domain.a + static_cast<double>(p + 1) * h;
  }
  return pts;
}

// ---------------------------------------------------------------------------
// Objective

Objective::Objective(ProblemSpec problem) : problem_(std::move(problem)) {
  problem_.validate();
  const auto points = problem_.training_points();
  cache_ = build_cache(problem_.basis_size, points, problem_.orders, problem_.num_ics() - 1);
  leading_slot_ = cache_.slot_of(problem_.leading_order());
  for (std::size_t i = 0; i + 1 < problem_.orders.size(); ++i) {
    lower_slots_.push_back(cache_.slot_of(problem_.orders[i]));
    df_dd_.push_back(diff(problem_.rhs, derivative_variable(i)));
  }
  df_dy_ = diff(problem_.rhs, "y");
}

Objective::PointState Objective::point_state(const Network& net, std::size_t p) const {
  PointState st;
  const double x = cache_.points()[p];
  st.env.set("x", x);
  st.env.set("t", x);
  st.env.set("y", forward(net, cache_, p));
  for (std::size_t i = 0; i < lower_slots_.size(); ++i) {
    const auto row = cache_.row(lower_slots_[i], p);
    double d = 0.0;
    for (std::size_t l = 0; l < row.size(); ++l) d += net.weights()[l] * row[l];
    st.env.set(derivative_variable(i), d);
  }
  const auto lead = cache_.row(leading_slot_, p);
  for (std::size_t l = 0; l < lead.size(); ++l) st.leading += net.weights()[l] * lead[l];
  return st;
}

std::vector<double> Objective::residual_jacobian(const PointState& st, std::size_t p) const {
  const auto lead = cache_.row(leading_slot_, p);
  std::vector<double> jac(lead.begin(), lead.end());
  const double fy = eval(df_dy_, st.env);
  const auto plain = cache_.row(0, p);
  for (std::size_t l = 0; l < jac.size(); ++l) jac[l] -= fy * plain[l];
  for (std::size_t i = 0; i < lower_slots_.size(); ++i) {
    const double fd = eval(df_dd_[i], st.env);
    const auto row = cache_.row(lower_slots_[i], p);
    for (std::size_t l = 0; l < jac.size(); ++l) jac[l] -= fd * row[l];
  }
  return jac;
}

double Objective::residual(const Network& net, std::size_t p) const {
  const PointState st = point_state(net, p);
  return st.leading - eval(problem_.rhs, st.env);
}

double Objective::penalty(const Network& net) const {
  double acc = 0.0;
  for (const InitialCondition& ic : problem_.ics) {
    const double miss = ic_forward(net, cache_, ic.k) - ic.value;
    acc += miss * miss;
  }
  return 0.5 * acc;
}

double Objective::cost(const Network& net) const {
  double sum = 0.0;
  for (std::size_t p = 0; p < cache_.num_points(); ++p) {
    const double r = residual(net, p);
    sum += r * r;
  }
  return 0.5 * (1.0 / static_cast<double>(cache_.num_points())) * sum + penalty(net);
}

std::vector<double> Objective::gradient(const Network& net) const { return evaluate(net).grad; }

Matrix Objective::gauss_newton_hessian(const Network& net) const { return evaluate(net).hess; }

LossParts Objective::evaluate(const Network& net) const {
  const std::size_t n = cache_.basis_size();
  if (net.size() != n) throw IndexError("network size does not match the problem's basis size");
  const double inv_p = 1.0 / static_cast<double>(cache_.num_points());

  LossParts out;
  out.grad.assign(n, 0.0);
  out.hess = Matrix(n, n);
  double sum_sq = 0.0;

  // Sequential reduction over p keeps results bit-reproducible.
  for (std::size_t p = 0; p < cache_.num_points(); ++p) {
    const PointState st = point_state(net, p);
    const double r = st.leading - eval(problem_.rhs, st.env);
    const std::vector<double> jac = residual_jacobian(st, p);
    sum_sq += r * r;
    for (std::size_t l = 0; l < n; ++l) {
      out.grad[l] += inv_p * r * jac[l];
      for (std::size_t m = l; m < n; ++m) out.hess(l, m) += inv_p * jac[l] * jac[m];
    }
  }

  double pen = 0.0;
  for (const InitialCondition& ic : problem_.ics) {
    const auto row = cache_.ic_row(ic.k);
    const double miss = ic_forward(net, cache_, ic.k) - ic.value;
    pen += miss * miss;
    for (std::size_t l = 0; l < n; ++l) {
      out.grad[l] += miss * row[l];
      for (std::size_t m = l; m < n; ++m) out.hess(l, m) += row[l] * row[m];
    }
  }
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t m = 0; m < l; ++m) out.hess(l, m) = out.hess(m, l);
  }

  out.cost = 0.5 * inv_p * sum_sq + 0.5 * pen;
  return out;
}

}  // namespace fibnet
