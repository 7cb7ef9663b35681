#include "fibnet/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fibnet/errors.hpp"
#include "fibnet/gamma.hpp"

namespace fibnet {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw DomainError("fractional order must be finite and positive, got " +
                      std::to_string(alpha));
  }
}

bool FractionalOrder::is_integer() const noexcept { return alpha_ == std::floor(alpha_); }

std::size_t FractionalOrder::ceil() const noexcept {
  return static_cast<std::size_t>(std::ceil(alpha_));
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (!coeffs_.empty() && coeffs_.size() - 1 > kMaxDegree) {
    throw DomainError("polynomial degree " + std::to_string(coeffs_.size() - 1) +
                      " exceeds the cap of " + std::to_string(kMaxDegree));
  }
}

Polynomial Polynomial::monomial(std::size_t degree, double coef) {
  std::vector<double> c(degree + 1, 0.0);
  c[degree] = coef;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) c[j] += coeffs_[j];
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) c[j] += other.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + other * -1.0; }

Polynomial Polynomial::operator*(double scale) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= scale;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::shifted() const {
  if (is_zero()) return {};
  std::vector<double> c(coeffs_.size() + 1, 0.0);
  std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + 1);
  return Polynomial(std::move(c));
}

// ---------------------------------------------------------------------------
// FracSeries

FracSeries::FracSeries(std::vector<PowerTerm> terms) {
  for (const PowerTerm& t : terms) {
    if (!std::isfinite(t.exponent) || t.exponent < 0.0) {
      throw DomainError("fractional series exponent must be finite and >= 0, got " +
                        std::to_string(t.exponent));
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
  for (const PowerTerm& t : terms) {
    if (!terms_.empty() && t.exponent - terms_.back().exponent < kExponentMergeTol) {
      terms_.back().coef += t.coef;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const PowerTerm& t) { return t.coef == 0.0; });
}

FracSeries FracSeries::from_polynomial(const Polynomial& p) {
  std::vector<PowerTerm> terms;
  for (std::size_t j = 0; j < p.coeffs().size(); ++j) {
    terms.push_back({p.coeffs()[j], static_cast<double>(j)});
  }
  return FracSeries(std::move(terms));
}

FracSeries FracSeries::operator+(const FracSeries& other) const {
  std::vector<PowerTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return FracSeries(std::move(all));
}

// ---------------------------------------------------------------------------
// Operations

Polynomial fibonacci(std::size_t m) {
  if (m == 0) return {};
  if (m - 1 > kMaxDegree) {
    throw DomainError("fibonacci: F_" + std::to_string(m) + " exceeds the degree cap");
  }
  Polynomial prev;              // F_0
  Polynomial cur({1.0});        // F_1
  for (std::size_t k = 1; k < m; ++k) {
    Polynomial next = cur.shifted() + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double fibonacci_coefficient(std::size_t m, std::size_t j) {
  if (m == 0 || j + 1 > m || (m + j) % 2 == 0) return 0.0;
  // C((m+j-1)/2, j) as a running product; every partial product is an integer.
  const std::size_t top = (m + j - 1) / 2;
  double c = 1.0;
  for (std::size_t r = 1; r <= j; ++r) {
    c = c * static_cast<double>(top - j + r) / static_cast<double>(r);
  }
  return c;
}

double eval_poly(const Polynomial& p, double x) {
  double acc = 0.0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial int_deriv_poly(const Polynomial& p, std::size_t k) {
  const auto& c = p.coeffs();
  if (k == 0) return p;
  if (k >= c.size()) return {};
  std::vector<double> out(c.size() - k);
  for (std::size_t j = k; j < c.size(); ++j) {
    double falling = 1.0;
    for (std::size_t r = 0; r < k; ++r) falling *= static_cast<double>(j - r);
    out[j - k] = c[j] * falling;
  }
  return Polynomial(std::move(out));
}

FracSeries caputo_deriv_poly(const Polynomial& p, FractionalOrder order) {
  if (order.is_integer()) {
    return FracSeries::from_polynomial(int_deriv_poly(p, order.ceil()));
  }
  const double alpha = order.value();
  std::vector<PowerTerm> terms;
  const auto& c = p.coeffs();
  for (std::size_t k = order.ceil(); k < c.size(); ++k) {
    if (c[k] == 0.0) continue;
    const double kd = static_cast<double>(k);
    terms.push_back({c[k] * gamma(kd + 1.0) / gamma(kd + 1.0 - alpha), kd - alpha});
  }
  return FracSeries(std::move(terms));
}

FracSeries caputo_deriv_fib(std::size_t i, FractionalOrder order) {
  if (i == 0) return {};
  if (i - 1 > kMaxDegree) {
    throw DomainError("caputo_deriv_fib: F_" + std::to_string(i) + " exceeds the degree cap");
  }
  const double alpha = order.value();
  std::vector<PowerTerm> terms;
  // j runs over monomial degrees of F_i with i + j odd and j >= ceil(alpha).
  for (std::size_t j = order.ceil(); j < i; ++j) {
    if ((i + j) % 2 == 0) continue;
    const std::size_t upper = (i + j - 1) / 2;  // ((i+j-1)/2)!
    const std::size_t lower = (i - j - 1) / 2;  // ((i-j-1)/2)!
    double ratio = 1.0;                         // upper! / lower!
    for (std::size_t r = lower + 1; r <= upper; ++r) ratio *= static_cast<double>(r);
    const double jd = static_cast<double>(j);
    terms.push_back({ratio / gamma(jd - alpha + 1.0), jd - alpha});
  }
  return FracSeries(std::move(terms));
}

double eval_fracseries(const FracSeries& s, double x) {
  if (!(x >= 0.0)) {
    throw DomainError("eval_fracseries: x must be >= 0, got " + std::to_string(x));
  }
  double acc = 0.0;
  for (const PowerTerm& t : s.terms()) {
    acc += t.exponent == 0.0 ? t.coef : t.coef * std::pow(x, t.exponent);
  }
  return acc;
}

std::vector<double> fibonacci_expansion(const Polynomial& p, std::size_t n) {
  std::vector<double> w(n, 0.0);
  if (p.is_zero()) return w;
  if (p.degree() >= n) {
    throw DomainError("fibonacci_expansion: degree " + std::to_string(p.degree()) +
                      " needs more than " + std::to_string(n) + " basis members");
  }
  // F_{k+1} is monic of degree k, so peel off the leading term repeatedly.
  Polynomial rest = p;
  for (std::size_t k = p.degree() + 1; k-- > 0;) {
    const double lead = k < rest.coeffs().size() ? rest.coeffs()[k] : 0.0;
    if (lead == 0.0) continue;
    w[k] = lead;
    rest = rest - fibonacci(k + 1) * lead;
  }
  return w;
}

}  // namespace fibnet
