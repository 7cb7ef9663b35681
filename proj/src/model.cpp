#include "fibnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fibnet/errors.hpp"

namespace fibnet {
namespace {

void check_compatible(const Network& net, const BasisCache& cache) {
  if (net.size() != cache.basis_size()) {
    throw IndexError("network has " + std::to_string(net.size()) +
                     " weights but the cache was built for " +
                     std::to_string(cache.basis_size()));
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

Network::Network(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("network needs at least one weight");
  for (double w : weights_) {
    if (!std::isfinite(w)) throw DomainError("network weights must be finite");
  }
}

std::size_t BasisCache::slot_of(FractionalOrder order) const {
  const auto it = std::find(orders_.begin(), orders_.end(), order);
  if (it == orders_.end()) {
    throw IndexError("order " + std::to_string(order.value()) + " is not in the basis cache");
  }
  return static_cast<std::size_t>(it - orders_.begin()) + 1;
}

std::span<const double> BasisCache::row(std::size_t slot, std::size_t p) const {
  if (slot > orders_.size()) throw IndexError("order slot out of range");
  if (p >= points_.size()) throw IndexError("point index " + std::to_string(p) + " out of range");
  return {values_.data() + (slot * points_.size() + p) * n_, n_};
}

std::span<const double> BasisCache::ic_row(std::size_t k) const {
  if (k > max_ic_order_) {
    throw IndexError("derivative order " + std::to_string(k) + " exceeds cached maximum " +
                     std::to_string(max_ic_order_));
  }
  return {ic_values_.data() + k * n_, n_};
}

double BasisCache::value(std::size_t slot, std::size_t i, std::size_t p) const {
  if (i == 0 || i > n_) throw IndexError("basis index out of range");
  return row(slot, p)[i - 1];
}

double BasisCache::ic_value(std::size_t k, std::size_t i) const {
  if (i == 0 || i > n_) throw IndexError("basis index out of range");
  return ic_row(k)[i - 1];
}

BasisCache build_cache(std::size_t n, std::span<const double> points,
                       std::span<const FractionalOrder> orders, std::size_t max_ic_order) {
  if (n == 0) throw DomainError("basis size must be at least 1");
  for (double x : points) {
    if (!(x >= 0.0)) throw DomainError("training points must be >= 0, got " + std::to_string(x));
  }

  BasisCache cache;
  cache.n_ = n;
  cache.points_.assign(points.begin(), points.end());
  cache.orders_.assign(orders.begin(), orders.end());
  std::sort(cache.orders_.begin(), cache.orders_.end());
  cache.orders_.erase(std::unique(cache.orders_.begin(), cache.orders_.end()),
                      cache.orders_.end());
  cache.max_ic_order_ = max_ic_order;

  const std::size_t num_points = points.size();
  const std::size_t slots = cache.orders_.size() + 1;
  cache.values_.assign(slots * num_points * n, 0.0);
  cache.ic_values_.assign((max_ic_order + 1) * n, 0.0);

  for (std::size_t i = 1; i <= n; ++i) {
    const Polynomial f = fibonacci(i);
    for (std::size_t p = 0; p < num_points; ++p) {
      cache.values_[p * n + (i - 1)] = eval_poly(f, points[p]);
    }
    for (std::size_t s = 1; s < slots; ++s) {
      const FracSeries d = caputo_deriv_fib(i, cache.orders_[s - 1]);
      for (std::size_t p = 0; p < num_points; ++p) {
        cache.values_[(s * num_points + p) * n + (i - 1)] = eval_fracseries(d, points[p]);
      }
    }
    for (std::size_t k = 0; k <= max_ic_order; ++k) {
      cache.ic_values_[k * n + (i - 1)] = eval_poly(int_deriv_poly(f, k), 0.0);
    }
  }
  return cache;
}

double forward(const Network& net, const BasisCache& cache, std::size_t p) {
  check_compatible(net, cache);
  return dot(net.weights(), cache.row(0, p));
}

double frac_forward(const Network& net, const BasisCache& cache, FractionalOrder order,
                    std::size_t p) {
  check_compatible(net, cache);
  return dot(net.weights(), cache.row(cache.slot_of(order), p));
}

double ic_forward(const Network& net, const BasisCache& cache, std::size_t k) {
  check_compatible(net, cache);
  return dot(net.weights(), cache.ic_row(k));
}

std::vector<double> weight_jacobian_row(const BasisCache& cache, std::size_t p) {
  const auto r = cache.row(0, p);
  return {r.begin(), r.end()};
}

std::vector<double> weight_jacobian_row(const BasisCache& cache, FractionalOrder order,
                                        std::size_t p) {
  const auto r = cache.row(cache.slot_of(order), p);
  return {r.begin(), r.end()};
}

double evaluate(const Network& net, double x) {
  double acc = 0.0;
  for (std::size_t i = 1; i <= net.size(); ++i) {
    acc += net.weights()[i - 1] * eval_poly(fibonacci(i), x);
  }
  return acc;
}

}  // namespace fibnet
