#pragma once

#include "morse/exactmath.hpp"
#include "morse/recurrence.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace morse {

/// Truncated power series c_0 + c_1 t + ... + c_N t^N over the rationals.
class Series1 {
public:
  explicit Series1(unsigned order);
  explicit Series1(std::vector<BigRational> coefficients);

  unsigned order() const { return static_cast<unsigned>(coeffs_.size() - 1); }
  const BigRational& operator[](unsigned k) const { return coeffs_.at(k); }
  BigRational& operator[](unsigned k) { return coeffs_.at(k); }
  const std::vector<BigRational>& coefficients() const { return coeffs_; }

  friend bool operator==(const Series1&, const Series1&) = default;

  /// One "k: p/q" line per stored coefficient.
  std::string to_string() const;

private:
  std::vector<BigRational> coeffs_;
};

// Binary operations truncate to the smaller order of the two operands.
Series1 operator+(const Series1& a, const Series1& b);
Series1 operator-(const Series1& a, const Series1& b);
Series1 operator*(const Series1& a, const Series1& b);
Series1 operator*(const BigRational& c, const Series1& s);
/// d/dt; exact through order N-1, so the result has order max(N-1, 0).
Series1 derivative(const Series1& s);

/// Horner evaluation at a real point.
HighPrecisionReal evaluate(const Series1& s, const HighPrecisionReal& t);

/// Sparse series in (u, v), keeping monomials u^a v^b with b <= V. Only
/// nonzero coefficients are stored.
class Series2 {
public:
  using Exponent = std::pair<unsigned, unsigned>;  // (u-exponent, v-exponent)

  explicit Series2(unsigned v_bound) : v_bound_(v_bound) {}

  static Series2 monomial(unsigned a, unsigned b, const BigRational& c, unsigned v_bound);

  unsigned v_bound() const { return v_bound_; }
  BigRational coefficient(unsigned a, unsigned b) const;
  /// Adds c to the coefficient of u^a v^b; ignored when b > V.
  void add_term(unsigned a, unsigned b, const BigRational& c);
  const std::map<Exponent, BigRational>& terms() const { return terms_; }

  /// Same series with the bound lowered to `v_bound`.
  Series2 truncated(unsigned v_bound) const;

  friend bool operator==(const Series2&, const Series2&) = default;

  /// One "a b: p/q" line per nonzero coefficient, sorted by (a, b).
  std::string to_string() const;

private:
  unsigned v_bound_;
  std::map<Exponent, BigRational> terms_;
};

Series2 operator+(const Series2& a, const Series2& b);
Series2 operator-(const Series2& a, const Series2& b);
Series2 operator*(const Series2& a, const Series2& b);
Series2 operator*(const BigRational& c, const Series2& s);
/// d/du keeps the bound; d/dv lowers it by one (V >= 1 required).
Series2 derivative_u(const Series2& s);
Series2 derivative_v(const Series2& s);

/// Taylor series of tan x through x^(2K+1) from the Bernoulli-number
/// formula: the coefficient of x^(2k-1) is 2^2k (2^2k - 1) |B_2k| / (2k)!.
Series1 tan_series_bernoulli(unsigned max_k);

/// T_k, the coefficient of x^(2k+1) in tan x.
BigRational tan_coefficient(unsigned k);

/// Coefficientwise solution of u' = 1 + u^2/2, u(0) = 0, through t^(2K+1):
/// u_0 = 1, (2k+1) u_k = 1/2 sum_{i+j=k-1} u_i u_j on the odd powers.
Series1 ode_lower_series(unsigned max_k);

/// sqrt(2) tan(t / sqrt(2)) through t^(2K+1); coefficient of t^(2k+1) is
/// T_k / 2^k.
Series1 scaled_tan_series(unsigned max_k);

/// xi(θ) = sum_n h(n) θ^(2n+1) through θ^(2N+1). RangeError if 2N > W.
Series1 xi_univariate(const HTable& table, unsigned max_n);

/// xi(u, v) = sum Ĥ(x, y) u^x v^(x+2y+1) over monomials with v-exponent
/// <= V. RangeError if V > W + 1.
Series2 xi_bivariate(const HTable& table, unsigned v_bound);

/// ∂_v xi - (1 + u xi + u^2/2) ∂_u xi - (xi^2/2 + u xi + 1), truncated to
/// v-exponent <= V - 1 where every coefficient is exact. RangeError if
/// V == 0.
Series2 pde_residual(const Series2& xi);

} // namespace morse
