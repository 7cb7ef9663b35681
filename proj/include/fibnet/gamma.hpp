#pragma once

namespace fibnet {

/// Largest argument for which Gamma(x) is finite in double precision.
inline constexpr double kGammaMaxArg = 171.62437695630272;

/// Gamma function via a Lanczos approximation (g = 7, 9 terms).
///
/// Relative accuracy is better than 1e-13 on (0, 171]. Arguments below 1/2
/// go through the reflection formula. Throws PoleError at 0, -1, -2, ...
/// and OverflowError when the result exceeds the double range.
double gamma(double x);

}  // namespace fibnet
