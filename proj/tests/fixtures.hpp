#pragma once

// Benchmark configurations shared by several test files.

#include <optional>
#include <vector>

#include "fibnet/problems.hpp"

namespace fixture {

struct Case {
  int id;
  std::optional<double> alpha;
  /// Weights of the exact solution in F_1..F_n, expanded by hand from
  /// F_1 = 1, F_2 = x, F_3 = x^2 + 1, F_4 = x^3 + 2x.
  std::vector<double> exact_weights;
};

inline std::vector<Case> all_cases() {
  return {
      {1, 0.25, {-1.0, 0.0, 1.0}},
      {1, 0.5, {-1.0, 0.0, 1.0}},
      {1, 0.75, {-1.0, 0.0, 1.0}},
      {2, std::nullopt, {0.0, -2.0, 0.0, 1.0}},
      {3, std::nullopt, {0.0, -2.0 / 3.0, 0.0, 1.0 / 3.0}},
      {4, 0.25, {-4.0, -4.0, 5.0}},
      {4, 0.5, {-4.0, -4.0, 5.0}},
      {4, 0.75, {-4.0, -4.0, 5.0}},
      {5, std::nullopt, {-1.0, 0.0, 1.0, 0.0}},
  };
}

/// One configuration per benchmark.
inline std::vector<Case> one_per_example() {
  return {all_cases()[1], all_cases()[3], all_cases()[4], all_cases()[6], all_cases()[8]};
}

}  // namespace fixture
