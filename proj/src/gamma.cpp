#include "fibnet/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fibnet/errors.hpp"

namespace fibnet {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// sin(pi * x) with the argument reduced to [-1, 1] first, so that large |x|
// does not lose the fractional part.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  return std::sin(std::numbers::pi * r);
}

// Lanczos sum for x >= 1/2.
double lanczos(double x) {
  x -= 1.0;
  double a = kLanczosCoeffs[0];
  const double t = x + kLanczosG + 0.5;
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    a += kLanczosCoeffs[i] / (x + static_cast<double>(i));
  }
  // t^(x+1/2) is split in two halves so that it does not overflow near 171.
  const double half_power = std::pow(t, 0.5 * (x + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) * a;
}

// Gamma on x >= 1/2. Arguments above 2 are shifted into [1, 2) and the
// recurrence is applied as a product, which keeps the relative error near a
// few ulps where a direct Lanczos evaluation would lose about log2(x) bits.
double gamma_positive(double x) {
  if (x <= 2.0) return lanczos(x);
  double shifted = x - std::floor(x - 1.0);
  double product = 1.0;
  while (shifted < x) {
    product *= shifted;
    shifted += 1.0;
  }
  return product * lanczos(x - std::floor(x - 1.0));
}

}  // namespace

double gamma(double x) {
  if (std::isnan(x)) throw DomainError("gamma: argument is NaN");
  if (x <= 0.0 && x == std::floor(x)) {
    throw PoleError("gamma: pole at x = " + std::to_string(x));
  }
  if (x > kGammaMaxArg) {
    throw OverflowError("gamma: result overflows for x = " + std::to_string(x));
  }

  // Positive integers by direct factorial: exact up to 22!, then correctly
  // rounded products.
  if (x >= 1.0 && x == std::floor(x)) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }

  double result = 0.0;
  if (x < 0.5) {
    const double reflected = 1.0 - x;
    if (reflected > kGammaMaxArg) {
      // Gamma(1 - x) overflows, so the quotient underflows to a signed zero.
      return sin_pi(x) > 0.0 ? 0.0 : -0.0;
    }
    result = std::numbers::pi / (sin_pi(x) * gamma_positive(reflected));
  } else {
    result = gamma_positive(x);
  }
  if (!std::isfinite(result)) {
    throw OverflowError("gamma: result overflows for x = " + std::to_string(x));
  }
  return result;
}

}  // namespace fibnet
