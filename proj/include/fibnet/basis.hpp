#pragma once

// Fibonacci polynomials and their classical and Caputo derivatives.

#include <cstddef>
#include <span>
#include <vector>

namespace fibnet {

/// Maximum polynomial degree accepted anywhere in the library.
inline constexpr std::size_t kMaxDegree = 64;

/// Two exponents closer than this are merged into one term.
inline constexpr double kExponentMergeTol = 1e-12;

/// Positive, finite order of differentiation.
class FractionalOrder {
 public:
  /// Throws DomainError unless alpha is finite and > 0.
  explicit FractionalOrder(double alpha);

  double value() const noexcept { return alpha_; }
  bool is_integer() const noexcept;
  /// Smallest integer >= alpha.
  std::size_t ceil() const noexcept;

  friend bool operator==(const FractionalOrder&, const FractionalOrder&) = default;
  friend auto operator<=>(const FractionalOrder&, const FractionalOrder&) = default;

 private:
  double alpha_;
};

/// Dense polynomial, coeffs()[j] multiplies x^j.
///
/// Always canonical: trailing zeros are stripped, so the zero polynomial has
/// no coefficients at all.
class Polynomial {
 public:
  Polynomial() = default;
  /// Throws DomainError when the canonical degree exceeds kMaxDegree.
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial monomial(std::size_t degree, double coef = 1.0);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; 0 for the zero polynomial as well as for constants.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(double scale) const;
  /// Multiplication by x.
  Polynomial shifted() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

/// One term c * x^e of a fractional power series.
struct PowerTerm {
  double coef = 0.0;
  double exponent = 0.0;

  friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

/// Finite sum of terms c * x^e with real exponents e >= 0.
///
/// Canonical form: exponents strictly increasing, no zero coefficients.
class FracSeries {
 public:
  FracSeries() = default;
  /// Sorts, merges exponents closer than kExponentMergeTol, and drops zero
  /// terms. Throws DomainError on negative or non-finite exponents.
  explicit FracSeries(std::vector<PowerTerm> terms);

  static FracSeries from_polynomial(const Polynomial& p);

  const std::vector<PowerTerm>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  FracSeries operator+(const FracSeries& other) const;

  friend bool operator==(const FracSeries&, const FracSeries&) = default;

 private:
  std::vector<PowerTerm> terms_;
};

/// F_m from F_0 = 0, F_1 = 1, F_{m+2} = x F_{m+1} + F_m.
/// Throws DomainError when m - 1 exceeds kMaxDegree.
Polynomial fibonacci(std::size_t m);

/// Coefficient of x^j in F_m computed from the binomial closed form.
double fibonacci_coefficient(std::size_t m, std::size_t j);

/// Horner evaluation.
double eval_poly(const Polynomial& p, double x);

/// k-fold classical derivative.
Polynomial int_deriv_poly(const Polynomial& p, std::size_t k);

/// Termwise Caputo derivative of order `order`.
///
/// Monomials of degree below ceil(alpha) vanish; x^k otherwise maps to
/// Gamma(k+1)/Gamma(k+1-alpha) x^(k-alpha). Integer orders reduce to the
/// classical derivative.
FracSeries caputo_deriv_poly(const Polynomial& p, FractionalOrder order);

/// Caputo derivative of F_i from the closed-form Fibonacci sum, without
/// building F_i first. Agrees with caputo_deriv_poly(fibonacci(i), order).
FracSeries caputo_deriv_fib(std::size_t i, FractionalOrder order);

/// Sum of c * x^e. Requires x >= 0 (DomainError otherwise); x^0 is 1 at 0.
double eval_fracseries(const FracSeries& s, double x);

/// Weights w_1..w_n with sum w_i F_i == p. Throws DomainError if p has
/// degree >= n (not representable with n basis members).
std::vector<double> fibonacci_expansion(const Polynomial& p, std::size_t n);

}  // namespace fibnet
