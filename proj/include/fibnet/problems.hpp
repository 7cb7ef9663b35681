#pragma once

// Built-in benchmark problems and the line-oriented problem-file format:
//
//   name = Example1
//   orders = 0.5                 # ascending, last one leads
//   rhs = x^2 + 2*x^(2-0.5)/gamma(3-0.5) - y
//   ic 0 = 0                     # one per k = 0..ceil(leading)-1
//   domain = 0, 1                # optional, default 0, 1
//   points = 10                  # optional, default 10
//   grid = 0.1, 0.2, ...         # optional explicit training points
//   basis = 3
//   exact = x^2                  # optional

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibnet/expr.hpp"
#include "fibnet/loss.hpp"
#include "fibnet/model.hpp"

namespace fibnet {

struct Benchmark {
  ProblemSpec spec;
  /// Exact solution in x; absent when unknown.
  std::optional<Expr> exact;
  std::string label;
  /// Reference iteration count for the example (0 if none).
  int reference_iterations = 0;
  std::size_t recommended_n = 0;
  /// Points at which the error table is reported.
  std::vector<double> report_grid;
};

inline constexpr int kNumBuiltins = 5;

/// Example `id` in 1..5. Examples 1 and 4 need 0 < alpha <= 1; Example 5
/// takes 0 < alpha < 2 (default 1.5, exact solution known only at 1.5).
/// Throws ValidationError on a bad id or alpha.
Benchmark builtin(int id, std::optional<double> alpha = std::nullopt);

/// Whether builtin(id, ...) is parametrised by alpha.
bool builtin_takes_alpha(int id);

/// Throws FormatError (with line number) or ValidationError.
Benchmark load_problem(std::string_view text);

/// Inverse of load_problem.
std::string to_problem_file(const Benchmark& bench);

struct ErrorRow {
  double t = 0.0;
  double numerical = 0.0;
  std::optional<double> exact;
  std::optional<double> abs_error;
};

/// N(t) from fresh basis evaluation next to the exact solution, if any.
std::vector<ErrorRow> error_table(const Network& net, const std::optional<Expr>& exact,
                                  const std::vector<double>& grid);

/// Evaluates an expression in the independent variable (bound as x and t).
double eval_at(const Expr& e, double x);

/// Uniform grid a, a + h, ..., b with `count` points.
std::vector<double> uniform_grid(double a, double b, std::size_t count);

}  // namespace fibnet
