#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fibnet/errors.hpp"
#include "fibnet/gamma.hpp"
#include "oracles.hpp"



namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("gamma: textbook values") {
  CHECK(fibnet::gamma(3.0) == 2.0);
  CHECK(fibnet::gamma(1.0) == 1.0);
  CHECK(rel_err(fibnet::gamma(0.5), std::sqrt(std::numbers::pi)) < 1e-15);
  CHECK(rel_err(fibnet::gamma(0.5), 1.7724538509055160) < 1e-15);
  CHECK(rel_err(fibnet::gamma(2.5), 1.3293403881791370) < 1e-15);
}

TEST_CASE("gamma: agrees with 40-digit reference values") {
  // mpmath, mp.dps = 40.
  const std::pair<double, double> table[] = {
      {0.001, 999.42377248459546611},
      {0.1, 9.5135076986687318363},
      {1.3, 0.89747069630627718849},
      {7.25, 1155.3810139199896872},
      {10.3, 716430.68906237524455},
      {33.7, 3.032162654739841602e+36},
      {99.9, 5.8917321516443616568e+155},
      {150.25, 1.3321507761951634843e+261},
      {170.5, 5.5620924145599996107e+305},
      {171.5, 9.4833675668247993363e+307},
      {-0.5, -3.5449077018110320546},
      {-1.5, 2.3632718012073547031},
      {-2.25, -1.7428148657282526509},
      {-10.7, -2.0163855047883621578e-7},
  };
  for (const auto& [x, want] : table) {
    CAPTURE(x);
    CHECK(rel_err(fibnet::gamma(x), want) < 1e-13);
  }
}

TEST_CASE("gamma: relative accuracy on (0, 171] against boost") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> dist(1e-6, 171.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = dist(gen);
    CAPTURE(x);
    CHECK(rel_err(fibnet::gamma(x), boost::math::tgamma(x)) < 1e-13);
  }
  for (int n = 1; n <= 171; ++n) {
    CAPTURE(n);
    CHECK(rel_err(fibnet::gamma(n), boost::math::tgamma(static_cast<double>(n))) < 1e-13);
  }
}

TEST_CASE("gamma: recursion Gamma(x+1) = x Gamma(x)") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(0.1, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double x = dist(gen);
    CAPTURE(x);
    CHECK(rel_err(fibnet::gamma(x + 1.0), x * fibnet::gamma(x)) < 1e-12);
  }
}

TEST_CASE("gamma: poles and overflow") {
  CHECK_THROWS_AS(fibnet::gamma(0.0), fibnet::PoleError);
  CHECK_THROWS_AS(fibnet::gamma(-1.0), fibnet::PoleError);
  CHECK_THROWS_AS(fibnet::gamma(-2.0), fibnet::PoleError);
  CHECK_THROWS_AS(fibnet::gamma(-50.0), fibnet::PoleError);
  CHECK_THROWS_AS(fibnet::gamma(171.7), fibnet::OverflowError);
  CHECK_THROWS_AS(fibnet::gamma(1000.0), fibnet::OverflowError);
  CHECK_THROWS_AS(fibnet::gamma(std::nan("")), fibnet::DomainError);
  CHECK(std::isfinite(fibnet::gamma(171.6)));
}
