#include "fibnet/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fibnet/errors.hpp"

namespace fibnet {

void TrainConfig::validate() const {
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) throw ValidationError("lambda0 must be > 0");
  if (max_iter == 0) throw ValidationError("max_iter must be positive");
  if (!(tol > 0.0)) throw ValidationError("tol must be > 0");
  if (!(decrease_factor > 1.0)) throw ValidationError("decrease_factor must be > 1");
  if (!(increase_factor > 1.0)) throw ValidationError("increase_factor must be > 1");
  if (max_inner_retries == 0) throw ValidationError("max_inner_retries must be positive");
}

std::string to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::kToleranceMet: return "tolerance_met";
    case TerminationReason::kMaxIterations: return "max_iterations";
    case TerminationReason::kDampingOverflow: return "damping_overflow";
  }
  return "unknown";
}

std::vector<double> init_weights(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> w;
  w.reserve(n);
  while (w.size() < n) {
    // Top 53 bits give a uniform double on [0, 1).
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    const double v = 2.0 * u - 1.0;
    if (std::find(w.begin(), w.end(), v) == w.end()) w.push_back(v);
  }
  return w;
}

std::vector<double> solve_damped(const Matrix& hess, double lambda,
                                 const std::vector<double>& grad) {
  if (!(lambda > 0.0)) throw DomainError("solve_damped: lambda must be > 0");
  Matrix a = hess;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += lambda;
  return solve_linear(std::move(a), grad);
}

TrainResult train_from(const Objective& objective, std::vector<double> initial_weights,
                       const TrainConfig& config, const TrainObserver& observer) {
  config.validate();

  TrainState state;
  state.weights = std::move(initial_weights);
  state.lambda = config.lambda0;
  Network net(state.weights);
  {
    LossParts parts = objective.evaluate(net);
    state.cost = parts.cost;
    state.grad = std::move(parts.grad);
    state.hess = std::move(parts.hess);
  }

  TrainReport report;
  report.cost_history.push_back(state.cost);
  if (observer) observer(state);

  for (;;) {
    if (state.cost < config.tol) {
      report.termination_reason = TerminationReason::kToleranceMet;
      break;
    }
    if (state.k >= config.max_iter) {
      report.termination_reason = TerminationReason::kMaxIterations;
      break;
    }

    bool accepted = false;
    for (std::size_t retry = 0; retry < config.max_inner_retries; ++retry) {
      const std::vector<double> step = solve_damped(state.hess, state.lambda, state.grad);
      std::vector<double> trial = state.weights;
      bool finite = true;
      for (std::size_t l = 0; l < trial.size(); ++l) {
        trial[l] -= step[l];
        finite = finite && std::isfinite(trial[l]);
      }
      if (finite) {
        Network trial_net(trial);
        const double trial_cost = objective.cost(trial_net);
        if (trial_cost < state.cost) {
          net = std::move(trial_net);
          state.weights = std::move(trial);
          state.lambda /= config.decrease_factor;
          ++state.k;
          LossParts parts = objective.evaluate(net);
          state.cost = parts.cost;
          state.grad = std::move(parts.grad);
          state.hess = std::move(parts.hess);
          accepted = true;
          break;
        }
      }
      state.lambda *= config.increase_factor;
    }
    if (!accepted) {
      report.termination_reason = TerminationReason::kDampingOverflow;
      break;
    }
    report.cost_history.push_back(state.cost);
    if (observer) observer(state);
  }

  report.iterations = state.k;
  report.final_cost = state.cost;
  report.converged = report.termination_reason == TerminationReason::kToleranceMet;
  report.final_lambda = state.lambda;
  return {std::move(net), std::move(report)};
}

TrainResult train(const ProblemSpec& problem, const TrainConfig& config,
                  const TrainObserver& observer) {
  config.validate();
  const Objective objective(problem);
  return train_from(objective, init_weights(problem.basis_size, config.seed), config, observer);
}

}  // namespace fibnet
