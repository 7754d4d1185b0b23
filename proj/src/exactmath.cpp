#include "morse/exactmath.hpp"

#include "morse/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <utility>

namespace morse {

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt catalan(unsigned long n) {
  BigInt r = binomial(2 * n, n);
  mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), n + 1);
  return r;
}

BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

std::vector<BigRational> bernoulli_numbers(unsigned long m) {
  // Akiyama-Tanigawa transform. It produces the B_1 = +1/2 convention, so
  // the sign of B_1 is flipped afterwards.
  std::vector<BigRational> out;
  out.reserve(m + 1);
  std::vector<BigRational> row(m + 1);
  for (unsigned long i = 0; i <= m; ++i) {
    row[i] = BigRational(1, i + 1);
    for (unsigned long j = i; j >= 1; --j) {
      row[j - 1] = j * (row[j - 1] - row[j]);
    }
    out.push_back(row[0]);
  }
  if (m >= 1) {
    out[1] = -out[1];
  }
  return out;
}

BigRational bernoulli(unsigned long m) {
  if (m >= 3 && m % 2 == 1) {
    return 0;
  }
  return bernoulli_numbers(m).back();
}

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) {
    throw DomainError("rational with zero denominator");
  }
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

bool is_canonical(const BigRational& q) {
  if (sgn(q.get_den()) <= 0) {
    return false;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return g == 1;
}

std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) {
    return q.get_num().get_str();
  }
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_plain_integer(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && s.front() == '-') {
    s.remove_prefix(1);
  }
  if (s.empty() || (s.size() > 1 && s.front() == '0')) {
    return false;
  }
  for (char c : s) {
    if (c < '0' || c > '9') {
      return false;
    }
  }
  return true;
}

} // namespace

BigRational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  const auto den_text =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_plain_integer(num_text, true) || !is_plain_integer(den_text, false) ||
      num_text == "-0") {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  BigRational q{BigInt(std::string(num_text)), BigInt(std::string(den_text))};
  if (!is_canonical(q) || (slash != std::string_view::npos && q.get_den() == 1)) {
    throw ParseError("rational not in lowest terms '" + std::string(text) + "'");
  }
  return q;
}

// ---------------------------------------------------------------------------

HighPrecisionReal::HighPrecisionReal(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

HighPrecisionReal::HighPrecisionReal(long value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

HighPrecisionReal::HighPrecisionReal(double value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

HighPrecisionReal::HighPrecisionReal(const BigInt& value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

HighPrecisionReal::HighPrecisionReal(const BigRational& value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

HighPrecisionReal::HighPrecisionReal(const HighPrecisionReal& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

HighPrecisionReal::HighPrecisionReal(HighPrecisionReal&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

HighPrecisionReal& HighPrecisionReal::operator=(const HighPrecisionReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

HighPrecisionReal& HighPrecisionReal::operator=(HighPrecisionReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

HighPrecisionReal::~HighPrecisionReal() { mpfr_clear(value_); }

HighPrecisionReal HighPrecisionReal::pi(mpfr_prec_t precision) {
  HighPrecisionReal r(precision);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

double HighPrecisionReal::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

std::string HighPrecisionReal::to_string(int digits) const {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*Rg", digits, value_) < 0) {
    throw std::bad_alloc();
  }
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

HighPrecisionReal HighPrecisionReal::log() const {
  HighPrecisionReal r(precision());
  mpfr_log(r.value_, value_, MPFR_RNDN);
  return r;
}

HighPrecisionReal HighPrecisionReal::exp() const {
  HighPrecisionReal r(precision());
  mpfr_exp(r.value_, value_, MPFR_RNDN);
  return r;
}

HighPrecisionReal HighPrecisionReal::abs() const {
  HighPrecisionReal r(precision());
  mpfr_abs(r.value_, value_, MPFR_RNDN);
  return r;
}

namespace {

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

HighPrecisionReal apply(BinaryOp op, const HighPrecisionReal& a, const HighPrecisionReal& b) {
  HighPrecisionReal r(std::max(a.precision(), b.precision()));
  op(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

} // namespace

HighPrecisionReal operator+(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  return apply(mpfr_add, a, b);
}
HighPrecisionReal operator-(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  return apply(mpfr_sub, a, b);
}
HighPrecisionReal operator*(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  return apply(mpfr_mul, a, b);
}
HighPrecisionReal operator/(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  return apply(mpfr_div, a, b);
}
HighPrecisionReal operator-(const HighPrecisionReal& a) {
  HighPrecisionReal r(a.precision());
  mpfr_neg(r.value_, a.value_, MPFR_RNDN);
  return r;
}

bool operator==(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  return mpfr_equal_p(a.value_, b.value_) != 0;
}

std::partial_ordering operator<=>(const HighPrecisionReal& a, const HighPrecisionReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) {
    return std::partial_ordering::unordered;
  }
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

// ---------------------------------------------------------------------------

HighPrecisionReal log_rational(const BigRational& q, mpfr_prec_t precision) {
  if (sgn(q) <= 0) {
    throw DomainError("log of non-positive rational " + to_string(q));
  }
  if (q < 1) {
    // Negation is exact, so log(1/q) == -log(q) bit for bit.
    return -log_rational(BigRational(1 / q), precision);
  }
  const auto num_bits = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  const auto den_bits = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  // |log q| < 2^int_bits, so the result never needs more than int_bits
  // extra bits to keep `precision` bits after the binary point. The guard
  // bits absorb the mantissa rounding and the cancellation in
  // e*log2 + log(m) when |log q| is near log(3/2).
  const auto int_bits = static_cast<mpfr_prec_t>(std::bit_width(
      static_cast<unsigned long>(num_bits + den_bits)));
  const mpfr_prec_t work = precision + int_bits + 32;
  HighPrecisionReal sum(work);

  const BigRational offset = q - 1;
  if (abs(offset) < BigRational(1, 2)) {
    // Near 1, log1p of the exact offset keeps the relative error bounded.
    const HighPrecisionReal x(offset, work);
    mpfr_log1p(sum.get(), x.get(), MPFR_RNDN);
  } else {
    // q = 2^e * m with e >= 0 and m in (1/2, 2): log q = e*log 2 + log1p(m - 1).
    const long e = num_bits - den_bits;
    BigRational m;
    mpq_div_2exp(m.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
    const HighPrecisionReal mant(BigRational(m - 1), work);
    HighPrecisionReal log_m(work);
    mpfr_log1p(log_m.get(), mant.get(), MPFR_RNDN);
    HighPrecisionReal log2(work);
    mpfr_const_log2(log2.get(), MPFR_RNDN);
    sum = HighPrecisionReal(e, work) * log2 + log_m;
  }

  // Keep `precision` bits after the binary point when |log q| >= 1.
  const mpfr_exp_t magnitude = mpfr_zero_p(sum.get()) ? 0 : mpfr_get_exp(sum.get());
  HighPrecisionReal result(precision + std::max<mpfr_prec_t>(0, magnitude));
  mpfr_set(result.get(), sum.get(), MPFR_RNDN);
  return result;
}

HighPrecisionReal log_integer(const BigInt& z, mpfr_prec_t precision) {
  return log_rational(BigRational(z), precision);
}

} // namespace morse
