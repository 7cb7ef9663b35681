#include <doctest.h>

#include <cmath>
#include <random>

#include "fibnet/errors.hpp"
#include "fibnet/model.hpp"
#include "oracles.hpp"

using namespace fibnet;

namespace {

constexpr double kTwoOverGamma25 = 1.5045055561273500985;
constexpr double kOneOverGamma15 = 1.1283791670955125739;

BasisCache cache_for(std::size_t n, std::vector<double> points, std::vector<double> orders,
                     std::size_t max_ic = 2) {
  std::vector<FractionalOrder> o;
  for (double a : orders) o.emplace_back(a);
  return build_cache(n, points, o, max_ic);
}

}  // namespace

TEST_CASE("Network validates its weights") {
  CHECK_THROWS_AS(Network({}), DomainError);
  CHECK_THROWS_AS(Network({1.0, NAN}), DomainError);
  CHECK(Network({1.0, 2.0}).size() == 2);
}

TEST_CASE("build_cache: examples") {
  const BasisCache c1 = cache_for(1, {0.5}, {0.5}, 0);
  CHECK(c1.value(0, 1, 0) == 1.0);
  CHECK(c1.value(c1.slot_of(FractionalOrder(0.5)), 1, 0) == 0.0);
  CHECK(c1.ic_value(0, 1) == 1.0);

  const BasisCache c3 = cache_for(3, {1.0}, {}, 0);
  CHECK(c3.value(0, 1, 0) == 1.0);
  CHECK(c3.value(0, 2, 0) == 1.0);
  CHECK(c3.value(0, 3, 0) == 2.0);

  const BasisCache empty = cache_for(2, {}, {0.5});
  CHECK(empty.num_points() == 0);
  CHECK(empty.basis_size() == 2);
  CHECK_THROWS_AS(empty.row(0, 0), IndexError);
}

TEST_CASE("build_cache: rejects bad input") {
  CHECK_THROWS_AS(cache_for(2, {0.5, -0.1}, {0.5}), DomainError);
  CHECK_THROWS_AS(cache_for(0, {0.5}, {0.5}), DomainError);
}

TEST_CASE("build_cache: stored values equal fresh evaluation") {
  std::mt19937_64 gen(17);
  const auto points = oracle::random_vector(gen, 12, 0.0, 1.0);
  const BasisCache c = cache_for(7, points, {0.5, 1.25}, 3);
  for (double alpha : {0.5, 1.25}) {
    const std::size_t slot = c.slot_of(FractionalOrder(alpha));
    for (std::size_t i = 1; i <= 6; ++i) {
      const FracSeries d = caputo_deriv_fib(i, FractionalOrder(alpha));
      for (std::size_t p = 0; p < points.size(); ++p) {
        CHECK(c.value(slot, i, p) == eval_fracseries(d, points[p]));
        CHECK(c.value(0, i, p) == eval_poly(fibonacci(i), points[p]));
      }
    }
  }
  for (std::size_t k = 0; k <= 3; ++k) {
    for (std::size_t i = 1; i <= 7; ++i) {
      CHECK(c.ic_value(k, i) == eval_poly(int_deriv_poly(fibonacci(i), k), 0.0));
    }
  }
  CHECK_THROWS_AS(c.slot_of(FractionalOrder(0.75)), IndexError);
  CHECK_THROWS_AS(c.ic_row(4), IndexError);
}

TEST_CASE("forward: examples") {
  const BasisCache c = cache_for(3, {0.5}, {0.5, 2.5});
  CHECK(forward(Network({-1.0, 0.0, 1.0}), c, 0) == 0.25);
  CHECK(forward(Network({0.0, 0.0, 0.0}), c, 0) == 0.0);

  const BasisCache c4 = cache_for(4, {1.0}, {});
  CHECK(forward(Network({0.0, -2.0, 0.0, 1.0}), c4, 0) == 1.0);

  CHECK_THROWS_AS(forward(Network({1.0, 2.0}), c, 0), IndexError);
  CHECK_THROWS_AS(forward(Network({1.0, 2.0, 3.0}), c, 1), IndexError);
}

TEST_CASE("frac_forward: examples") {
  const BasisCache c = cache_for(3, {1.0, 0.25}, {0.5, 2.5});
  const Network square({-1.0, 0.0, 1.0});
  CHECK(std::abs(frac_forward(square, c, FractionalOrder(0.5), 0) - kTwoOverGamma25) < 1e-14);
  CHECK(frac_forward(square, c, FractionalOrder(2.5), 0) == 0.0);
  CHECK(frac_forward(square, c, FractionalOrder(2.5), 1) == 0.0);
  CHECK(std::abs(frac_forward(Network({0.0, 1.0, 0.0}), c, FractionalOrder(0.5), 1) -
                 0.5641895835477563) < 1e-15);
  CHECK_THROWS_AS(frac_forward(square, c, FractionalOrder(0.75), 0), IndexError);
}

TEST_CASE("weight_jacobian_row: examples") {
  const BasisCache c = cache_for(3, {1.0}, {0.5});
  CHECK(weight_jacobian_row(c, 0) == std::vector<double>{1.0, 1.0, 2.0});
  const auto row = weight_jacobian_row(c, FractionalOrder(0.5), 0);
  REQUIRE(row.size() == 3);
  CHECK(row[0] == 0.0);
  CHECK(std::abs(row[1] - kOneOverGamma15) < 1e-15);
  CHECK(std::abs(row[2] - kTwoOverGamma25) < 1e-14);
  CHECK(weight_jacobian_row(cache_for(1, {0.3}, {}), 0) == std::vector<double>{1.0});
}

TEST_CASE("ic_forward: examples") {
  const BasisCache c = cache_for(3, {0.5}, {0.5}, 1);
  CHECK(ic_forward(Network({-1.0, 0.0, 1.0}), c, 0) == 0.0);
  CHECK(ic_forward(Network({-1.0, 0.0, 1.0}), c, 1) == 0.0);
  CHECK(ic_forward(Network({1.0, 0.0, 0.0}), c, 0) == 1.0);
  CHECK(ic_forward(Network({0.0, 3.0, 0.0}), c, 1) == 3.0);
  CHECK_THROWS_AS(ic_forward(Network({1.0, 0.0, 0.0}), c, 2), IndexError);
}

TEST_CASE("forward is linear in the weights") {
  std::mt19937_64 gen(23);
  const auto points = oracle::random_vector(gen, 8, 0.0, 1.0);
  const BasisCache c = cache_for(5, points, {0.5, 1.25});
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = oracle::random_vector(gen, 5, -2.0, 2.0);
    const auto v = oracle::random_vector(gen, 5, -2.0, 2.0);
    std::vector<double> sum(5);
    for (std::size_t l = 0; l < 5; ++l) sum[l] = u[l] + v[l];
    for (std::size_t p = 0; p < points.size(); ++p) {
      CHECK(std::abs(forward(Network(sum), c, p) -
                     (forward(Network(u), c, p) + forward(Network(v), c, p))) <= 1e-12);
      for (double a : {0.5, 1.25}) {
        const FractionalOrder o(a);
        CHECK(std::abs(frac_forward(Network(sum), c, o, p) -
                       (frac_forward(Network(u), c, o, p) + frac_forward(Network(v), c, o, p))) <=
              1e-12);
      }
    }
  }
}

TEST_CASE("weight_jacobian_row matches finite differences of forward") {
  std::mt19937_64 gen(29);
  const BasisCache c = cache_for(4, {0.2, 0.6, 0.9}, {0.75});
  const auto w = oracle::random_vector(gen, 4, -2.0, 2.0);
  for (std::size_t p = 0; p < 3; ++p) {
    const auto row = weight_jacobian_row(c, FractionalOrder(0.75), p);
    for (std::size_t l = 0; l < 4; ++l) {
      const double fd = oracle::central_difference(
          [&](const std::vector<double>& x) {
            return frac_forward(Network(x), c, FractionalOrder(0.75), p);
          },
          w, l, 1e-6);
      CHECK(std::abs(fd - row[l]) <= 1e-9 * std::max(1.0, std::abs(row[l])));
    }
  }
}

TEST_CASE("evaluate uses fresh polynomials") {
  CHECK(evaluate(Network({0.0, -2.0, 0.0, 1.0}), 0.5) == 0.125);
  CHECK(evaluate(Network({-4.0, -4.0, 5.0}), 0.5) == 0.25);
}
