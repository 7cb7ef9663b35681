#include <doctest.h>

#include <cmath>
#include <random>

#include "fibnet/errors.hpp"
#include "fibnet/problems.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fibnet;

namespace {

constexpr const char* kExample1File = R"(# Example 1 at alpha = 0.5
name = Example1
orders = 0.5            # last entry leads
rhs = x^2 + 2*x^(2-0.5)/gamma(3-0.5) - y
ic 0 = 0
domain = 0, 1
points = 10
basis = 3
exact = x^2
)";

/// Compares two rhs expressions by value on random environments.
void check_same_rhs(const Expr& a, const Expr& b, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(0.05, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double x = dist(gen);
    Env env{{"x", x}, {"t", x}, {"y", dist(gen)}, {"d1", dist(gen)}, {"d2", dist(gen)}};
    const double va = eval(a, env);
    CHECK(std::abs(va - eval(b, env)) <= 1e-14 * std::max(1.0, std::abs(va)));
  }
}

void check_equivalent(const Benchmark& a, const Benchmark& b) {
  CHECK(a.spec.orders == b.spec.orders);
  CHECK(a.spec.ics == b.spec.ics);
  CHECK(a.spec.domain == b.spec.domain);
  CHECK(a.spec.num_points == b.spec.num_points);
  CHECK(a.spec.basis_size == b.spec.basis_size);
  CHECK(a.spec.grid == b.spec.grid);
  CHECK(a.spec.training_points() == b.spec.training_points());
  std::mt19937_64 gen(5);
  check_same_rhs(a.spec.rhs, b.spec.rhs, gen);
  REQUIRE(a.exact.has_value() == b.exact.has_value());
  if (a.exact) {
    for (int k = 0; k <= 20; ++k) {
      const double x = k / 20.0;
      CHECK(eval_at(*a.exact, x) == doctest::Approx(eval_at(*b.exact, x)).epsilon(1e-15));
    }
  }
}

/// Exact solutions as coefficient lists in x.
std::vector<double> exact_coeffs(int id) {
  switch (id) {
    case 2: return {0.0, 0.0, 0.0, 1.0};
    case 3: return {0.0, 0.0, 0.0, 1.0 / 3.0};
    case 4: return {1.0, -4.0, 5.0};
    default: return {0.0, 0.0, 1.0};
  }
}

/// D^alpha of a polynomial by quadrature, or term by term for integer orders.
double reference_derivative(const std::vector<double>& c, double alpha, double t) {
  if (alpha == std::floor(alpha)) return oracle::poly_derivative(c, static_cast<unsigned>(alpha), t);
  return oracle::caputo_by_quadrature(c, alpha, t);
}

}  // namespace

TEST_CASE("builtin: examples") {
  CHECK(eval_at(*builtin(1, 0.5).exact, 0.3) == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(eval_at(*builtin(4, 0.25).exact, 0.5) == 0.25);
  const Benchmark b3 = builtin(3);
  REQUIRE(b3.spec.orders.size() == 3);
  CHECK(b3.spec.orders[0].value() == 0.75);
  CHECK(b3.spec.orders[1].value() == 1.25);
  CHECK(b3.spec.orders[2].value() == 2.2);
}

TEST_CASE("builtin: sizes, iteration references and labels") {
  struct Row { int id; std::optional<double> alpha; std::size_t n; int iters; const char* label; };
  for (const Row& r : {Row{1, 0.5, 3, 18, "example1_alpha0.5"}, Row{2, {}, 4, 17, "example2"},
                       Row{3, {}, 4, 16, "example3"}, Row{4, 0.25, 3, 28, "example4_alpha0.25"},
                       Row{5, {}, 4, 16, "example5_alpha1.5"}}) {
    const Benchmark b = builtin(r.id, r.alpha);
    CHECK(b.spec.basis_size == r.n);
    CHECK(b.recommended_n == r.n);
    CHECK(b.spec.num_points == 10);
    CHECK(b.reference_iterations == r.iters);
    CHECK(b.label == r.label);
  }
}

TEST_CASE("builtin: rejects bad ids and alphas") {
  CHECK_THROWS_AS(builtin(0), ValidationError);
  CHECK_THROWS_AS(builtin(6), ValidationError);
  CHECK_THROWS_AS(builtin(1), ValidationError);
  CHECK_THROWS_AS(builtin(1, 1.5), ValidationError);
  CHECK_THROWS_AS(builtin(4, 0.0), ValidationError);
  CHECK_THROWS_AS(builtin(5, 2.0), ValidationError);
  CHECK(builtin(5).spec.orders[0].value() == 1.5);
  CHECK_FALSE(builtin(5, 1.2).exact.has_value());
  CHECK(builtin(5, 1.2).spec.orders[0].value() == 1.2);
}

TEST_CASE("builtin: exact solutions satisfy the initial conditions") {
  for (const auto& c : fixture::all_cases()) {
    const Benchmark b = builtin(c.id, c.alpha);
    REQUIRE(b.exact);
    const auto coeffs = exact_coeffs(c.id);
    for (const auto& ic : b.spec.ics) {
      CHECK(std::abs(oracle::poly_derivative(coeffs, static_cast<unsigned>(ic.k), 0.0) - ic.value) <=
            1e-12);
    }
    CHECK(std::abs(eval_at(*b.exact, 0.0) - coeffs[0]) <= 1e-12);
  }
}

TEST_CASE("builtin: exact solutions reproduce the forcing terms") {
  std::mt19937_64 gen(301);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (const auto& c : fixture::all_cases()) {
    const Benchmark b = builtin(c.id, c.alpha);
    const auto coeffs = exact_coeffs(c.id);
    for (int k = 0; k < 20; ++k) {
      const double t = 1.0 - dist(gen);  // (0, 1]
      Env env{{"x", t}, {"t", t}, {"y", oracle::poly_derivative(coeffs, 0, t)}};
      for (std::size_t i = 0; i + 1 < b.spec.orders.size(); ++i) {
        env.set(derivative_variable(i), reference_derivative(coeffs, b.spec.orders[i].value(), t));
      }
      const double lhs = reference_derivative(coeffs, b.spec.leading_order().value(), t);
      CAPTURE(b.label);
      CAPTURE(t);
      CHECK(std::abs(lhs - eval(b.spec.rhs, env)) <= 1e-9);
    }
  }
}

TEST_CASE("load_problem: the Example 1 file matches the builtin") {
  const Benchmark loaded = load_problem(kExample1File);
  CHECK(loaded.label == "Example1");
  check_equivalent(loaded, builtin(1, 0.5));
}

TEST_CASE("load_problem: validation errors") {
  CHECK_THROWS_WITH_AS(load_problem("orders = 0.5\nrhs = x - y\nbasis = 3\n"),
                       "missing initial condition k=0", ValidationError);
  CHECK_THROWS_WITH_AS(load_problem("orders = 0.5, 0.5\nrhs = x - y\nic 0 = 0\nbasis = 3\n"),
                       "orders must be strictly increasing", ValidationError);
  CHECK_THROWS_WITH_AS(load_problem("orders = 0.5\nic 0 = 0\nbasis = 3\n"),
                       "missing required key 'rhs'", ValidationError);
}

TEST_CASE("load_problem: format errors carry the line number") {
  const auto line_of = [](const char* text) {
    try {
      load_problem(text);
    } catch (const FormatError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("orders = 0.5\n# comment\nrhs = x + (y\nic 0 = 0\nbasis = 3\n") == 3);
  CHECK(line_of("orders = 0.5\nrhs = x\nbasis = 3\nbasis = 4\n") == 4);
  CHECK(line_of("orders = 0.5\ncolour = blue\n") == 2);
  CHECK(line_of("orders = 0.5, abc\n") == 1);
  CHECK(line_of("orders = 0.5\nno equals sign\n") == 2);
  CHECK(line_of("\n\nic x = 1\n") == 3);
  try {
    load_problem("orders = 0.5\nrhs = 2t\n");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).rfind("line 2: ", 0) == 0);
  }
}

TEST_CASE("load_problem: explicit grid and defaults") {
  const Benchmark b =
      load_problem("orders = 0.5\nrhs = x - y\nic 0 = 0\nbasis = 3\ngrid = 0.25, 0.5, 1\n");
  CHECK(b.label == "problem");
  CHECK(b.spec.num_points == 3);
  CHECK(b.spec.training_points() == std::vector<double>{0.25, 0.5, 1.0});
  CHECK(b.spec.domain == Interval{0.0, 1.0});
  CHECK_FALSE(b.exact.has_value());
  CHECK(b.report_grid.size() == 11);
}

TEST_CASE("to_problem_file round trips every builtin") {
  for (const auto& c : fixture::all_cases()) {
    const Benchmark b = builtin(c.id, c.alpha);
    const Benchmark back = load_problem(to_problem_file(b));
    CAPTURE(b.label);
    CHECK(back.label == b.label);
    check_equivalent(back, b);
  }
  Benchmark with_grid = builtin(2);
  with_grid.spec.grid = {0.125, 0.5, 0.75};
  with_grid.spec.num_points = 3;
  check_equivalent(load_problem(to_problem_file(with_grid)), with_grid);
}

TEST_CASE("error_table: examples") {
  const auto grid = uniform_grid(0.0, 1.0, 11);
  const auto rows = error_table(Network({0.0, -2.0, 0.0, 1.0}), parse("x^3"), grid);
  REQUIRE(rows.size() == 11);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double t = k / 10.0;
    CHECK(rows[k].t == grid[k]);
    CHECK(std::abs(*rows[k].exact - t * t * t) <= 1e-15);
    CHECK(*rows[k].abs_error <= 1e-15);
  }
  CHECK(std::abs(*rows[1].exact - 0.001) <= 1e-15);

  const auto one = error_table(Network({0.0, 0.0, 0.0}), parse("x^2"), {1.0});
  REQUIRE(one.size() == 1);
  CHECK(one[0].t == 1.0);
  CHECK(one[0].numerical == 0.0);
  CHECK(*one[0].exact == 1.0);
  CHECK(*one[0].abs_error == 1.0);

  CHECK(error_table(Network({1.0}), parse("x"), {}).empty());
  const auto no_exact = error_table(Network({1.0}), std::nullopt, {0.5});
  CHECK_FALSE(no_exact[0].exact.has_value());
  CHECK_FALSE(no_exact[0].abs_error.has_value());
  CHECK_THROWS_AS(error_table(Network({1.0}), std::nullopt, {-0.5}), DomainError);
}

TEST_CASE("uniform_grid") {
  CHECK(uniform_grid(0.0, 1.0, 0).empty());
  CHECK(uniform_grid(0.0, 1.0, 1) == std::vector<double>{0.0});
  CHECK(uniform_grid(0.0, 1.0, 3) == std::vector<double>{0.0, 0.5, 1.0});
}
