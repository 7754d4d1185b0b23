#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace morse {

// Exact integers and rationals are GMP values. gmpxx keeps every mpq_class
// produced by arithmetic in lowest terms with a positive denominator; values
// built from raw parts must go through make_rational() or parse_rational().
using BigInt = mpz_class;
using BigRational = mpq_class;

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);
BigInt catalan(unsigned long n);
BigInt pow2(unsigned long e);

/// B_m with the t/(e^t - 1) convention, so B_1 = -1/2.
BigRational bernoulli(unsigned long m);

/// B_0 ... B_m in one pass.
std::vector<BigRational> bernoulli_numbers(unsigned long m);

/// num/den reduced to canonical form. Throws DomainError on den == 0.
BigRational make_rational(const BigInt& num, const BigInt& den);

/// True if q has a positive denominator and gcd(|num|, den) == 1.
bool is_canonical(const BigRational& q);

/// "p/q", or "p" when q == 1.
std::string to_string(const BigRational& q);

/// Inverse of to_string. Rejects anything that is not the canonical
/// spelling of a rational ("2/4", "+1", "1/1", "-0" all fail).
BigRational parse_rational(std::string_view text);

/// Binary floating-point value with a per-value mantissa precision, backed
/// by MPFR. Every operation is correctly rounded to the result precision,
/// which is the larger of the operand precisions.
class HighPrecisionReal {
public:
  static constexpr mpfr_prec_t default_precision = 128;
  static constexpr mpfr_prec_t min_precision = 64;

  explicit HighPrecisionReal(mpfr_prec_t precision = default_precision);
  HighPrecisionReal(long value, mpfr_prec_t precision);
  HighPrecisionReal(int value, mpfr_prec_t precision)
      : HighPrecisionReal(static_cast<long>(value), precision) {}
  HighPrecisionReal(double value, mpfr_prec_t precision);
  HighPrecisionReal(const BigInt& value, mpfr_prec_t precision);
  HighPrecisionReal(const BigRational& value, mpfr_prec_t precision);

  HighPrecisionReal(const HighPrecisionReal& other);
  HighPrecisionReal(HighPrecisionReal&& other) noexcept;
  HighPrecisionReal& operator=(const HighPrecisionReal& other);
  HighPrecisionReal& operator=(HighPrecisionReal&& other) noexcept;
  ~HighPrecisionReal();

  static HighPrecisionReal pi(mpfr_prec_t precision);

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double() const;
  /// Decimal rendering with `digits` significant digits ("%.<digits>g").
  std::string to_string(int digits = 9) const;

  HighPrecisionReal log() const;
  HighPrecisionReal exp() const;
  HighPrecisionReal abs() const;

  friend HighPrecisionReal operator+(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend HighPrecisionReal operator-(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend HighPrecisionReal operator*(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend HighPrecisionReal operator/(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend HighPrecisionReal operator-(const HighPrecisionReal& a);

  friend bool operator==(const HighPrecisionReal& a, const HighPrecisionReal& b);
  friend std::partial_ordering operator<=>(const HighPrecisionReal& a,
                                           const HighPrecisionReal& b);

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

private:
  mpfr_t value_;
};

/// Natural logarithm of a positive rational. The result keeps `precision`
/// significant bits plus one extra bit per bit of its integer part, so both
/// its relative and its absolute error are at most 2^-precision.
/// Throws DomainError for q <= 0.
HighPrecisionReal log_rational(const BigRational& q,
                               mpfr_prec_t precision = HighPrecisionReal::default_precision);

/// Natural logarithm of a positive integer.
HighPrecisionReal log_integer(const BigInt& z,
                              mpfr_prec_t precision = HighPrecisionReal::default_precision);

} // namespace morse
