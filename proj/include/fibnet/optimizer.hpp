#pragma once

// Marquardt training loop for the Fibonacci network.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fibnet/linalg.hpp"
#include "fibnet/loss.hpp"
#include "fibnet/model.hpp"

namespace fibnet {

struct TrainConfig {
  double lambda0 = 1e4;
  std::size_t max_iter = 200;
  double tol = 1e-24;
  double decrease_factor = 4.0;
  double increase_factor = 2.0;
  std::size_t max_inner_retries = 60;
  std::uint64_t seed = 42;

  /// Throws ValidationError on non-positive values or factors <= 1.
  void validate() const;
};

/// Snapshot after evaluating cost, gradient and Hessian at `weights`.
struct TrainState {
  std::size_t k = 0;
  std::vector<double> weights;
  double lambda = 0.0;
  double cost = 0.0;
  std::vector<double> grad;
  Matrix hess;
};

enum class TerminationReason { kToleranceMet, kMaxIterations, kDampingOverflow };

std::string to_string(TerminationReason reason);

struct TrainReport {
  std::size_t iterations = 0;
  double final_cost = 0.0;
  bool converged = false;
  /// Cost at the initial weights followed by the cost after each accepted step.
  std::vector<double> cost_history;
  TerminationReason termination_reason = TerminationReason::kMaxIterations;
  double final_lambda = 0.0;
};

struct TrainResult {
  Network network;
  TrainReport report;
};

/// n values uniform on [-1, 1), pairwise distinct, from a mt19937_64 stream
/// seeded with `seed`. Bit-identical across platforms.
std::vector<double> init_weights(std::size_t n, std::uint64_t seed);

/// s with (hess + lambda I) s = grad. Requires lambda > 0.
std::vector<double> solve_damped(const Matrix& hess, double lambda, const std::vector<double>& grad);

using TrainObserver = std::function<void(const TrainState&)>;

/// Runs the damped Gauss-Newton loop from random initial weights.
///
/// Accepted steps divide lambda by decrease_factor and bump k; rejected steps
/// multiply lambda by increase_factor and re-solve with the same gradient and
/// Hessian. Stops when the cost drops below tol, after max_iter accepted steps,
/// or after max_inner_retries consecutive rejections. The observer (optional)
/// sees the initial state and every accepted state.
TrainResult train(const ProblemSpec& problem, const TrainConfig& config,
                  const TrainObserver& observer = {});

/// Same loop, starting from the given weights.
TrainResult train_from(const Objective& objective, std::vector<double> initial_weights,
                       const TrainConfig& config, const TrainObserver& observer = {});

}  // namespace fibnet
