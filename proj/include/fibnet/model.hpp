#pragma once

// The Fibonacci network: one input, n hidden units F_1..F_n with unit input
// weights, and a weighted-sum output N(x) = sum_i w_i F_i(x).

#include <cstddef>
#include <span>
#include <vector>

#include "fibnet/basis.hpp"

namespace fibnet {

/// Output weights w_1..w_n (stored 0-based).
class Network {
 public:
  /// Throws DomainError if weights is empty or contains non-finite values.
  explicit Network(std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

/// Basis values at fixed training points, computed once per run.
///
/// Order slot 0 holds F_i(x_p); slot s >= 1 holds D^{orders[s-1]} F_i(x_p).
/// ic_value(k, i) is the k-th classical derivative of F_i at 0.
class BasisCache {
 public:
  std::size_t basis_size() const noexcept { return n_; }
  std::size_t num_points() const noexcept { return points_.size(); }
  const std::vector<double>& points() const noexcept { return points_; }
  const std::vector<FractionalOrder>& orders() const noexcept { return orders_; }
  std::size_t max_ic_order() const noexcept { return max_ic_order_; }

  /// Slot index of `order`; throws IndexError when the cache lacks it.
  std::size_t slot_of(FractionalOrder order) const;

  /// Values of F_1..F_n (or their derivative in `slot`) at point p.
  std::span<const double> row(std::size_t slot, std::size_t p) const;
  /// k-th derivatives of F_1..F_n at 0.
  std::span<const double> ic_row(std::size_t k) const;

  /// Basis index i is 1-based, as in N = sum_{i=1}^n w_i F_i.
  double value(std::size_t slot, std::size_t i, std::size_t p) const;
  double ic_value(std::size_t k, std::size_t i) const;

 private:
  friend BasisCache build_cache(std::size_t, std::span<const double>,
                                std::span<const FractionalOrder>, std::size_t);

  std::size_t n_ = 0;
  std::vector<double> points_;
  std::vector<FractionalOrder> orders_;
  std::size_t max_ic_order_ = 0;
  std::vector<double> values_;     // [slot][p][i]
  std::vector<double> ic_values_;  // [k][i]
};

/// Throws DomainError if n == 0 or any point is negative. Orders are stored
/// sorted and deduplicated.
BasisCache build_cache(std::size_t n, std::span<const double> points,
                       std::span<const FractionalOrder> orders, std::size_t max_ic_order);

/// N(x_p).
double forward(const Network& net, const BasisCache& cache, std::size_t p);
/// D^order N(x_p).
double frac_forward(const Network& net, const BasisCache& cache, FractionalOrder order,
                    std::size_t p);
/// N^(k)(0).
double ic_forward(const Network& net, const BasisCache& cache, std::size_t k);

/// dN(x_p)/dw_l for l = 1..n, i.e. the basis values themselves.
std::vector<double> weight_jacobian_row(const BasisCache& cache, std::size_t p);
/// d(D^order N(x_p))/dw_l.
std::vector<double> weight_jacobian_row(const BasisCache& cache, FractionalOrder order,
                                        std::size_t p);

/// N(x) from freshly built Fibonacci polynomials, bypassing any cache.
double evaluate(const Network& net, double x);

}  // namespace fibnet
