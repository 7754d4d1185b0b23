#include "morse/errors.hpp"
#include "morse/exactmath.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace morse;

TEST_CASE("factorial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(21) == BigInt("51090942171709440000"));
  for (unsigned n = 0; n <= 60; ++n) {
    CHECK(factorial(n) == oracle::iterated_factorial(n));
  }
}

TEST_CASE("catalan numbers") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(3) == 5);
  CHECK(catalan(10) == 16796);
  const auto conv = oracle::catalan_convolution(30);
  for (unsigned n = 0; n <= 30; ++n) {
    CHECK(catalan(n) == conv[n]);
  }
}

TEST_CASE("binomial matches Pascal's triangle") {
  for (unsigned n = 0; n <= 40; n += 7) {
    for (unsigned k = 0; k <= n; ++k) {
      CHECK(binomial(n, k) == oracle::pascal_binomial(n, k));
    }
  }
}

TEST_CASE("bernoulli numbers use the t/(e^t - 1) convention") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == BigRational(-1, 2));
  CHECK(bernoulli(2) == BigRational(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(4) == BigRational(-1, 30));
  CHECK(bernoulli(6) == BigRational(1, 42));

  SUBCASE("agrees with the binomial recurrence") {
    const auto ref = oracle::bernoulli_recurrence(60);
    const auto got = bernoulli_numbers(60);
    REQUIRE(got.size() == ref.size());
    for (unsigned m = 0; m <= 60; ++m) {
      CHECK_MESSAGE(got[m] == ref[m], "m=" << m);
    }
  }
  SUBCASE("odd indices above one vanish") {
    for (unsigned k = 1; k <= 25; ++k) {
      CHECK(bernoulli(2 * k + 1) == 0);
    }
  }
}

TEST_CASE("rational text format") {
  CHECK(to_string(BigRational(3)) == "3");
  CHECK(to_string(BigRational(-7, 12)) == "-7/12");
  CHECK(to_string(BigRational(0)) == "0");
  CHECK(parse_rational("-7/12") == BigRational(-7, 12));
  CHECK(parse_rational("0") == 0);
  CHECK(parse_rational("123456789012345678901234567890/11") ==
        make_rational(BigInt("123456789012345678901234567890"), 11));

  for (const char* bad : {"", "/", "1/", "/2", "2/4", "1/1", "+1", "-0", "01", "1/0", "1/-2",
                          "1.5", "1 /2", "0/3"}) {
    CHECK_THROWS_AS_MESSAGE(parse_rational(bad), ParseError, bad);
  }
}

TEST_CASE("canonical form is preserved by arithmetic") {
  std::mt19937_64 rng(20060420);
  std::uniform_int_distribution<long> dist(-1000000, 1000000);
  for (int i = 0; i < 500; ++i) {
    long d1 = dist(rng);
    long d2 = dist(rng);
    if (d1 == 0) d1 = 1;
    if (d2 == 0) d2 = 3;
    const BigRational a = make_rational(dist(rng), d1);
    const BigRational b = make_rational(dist(rng), d2);
    CHECK(is_canonical(a + b));
    CHECK(is_canonical(a * b));
    CHECK(is_canonical(a - b));
    if (sgn(b) != 0) {
      CHECK(is_canonical(BigRational(a / b)));
    }
    CHECK(parse_rational(to_string(a * b)) == a * b);
  }
  CHECK_FALSE(is_canonical(BigRational(2, 4)));
  CHECK_THROWS_AS(make_rational(1, 0), DomainError);
}

TEST_CASE("log_rational") {
  CHECK(log_rational(1) == HighPrecisionReal(0, 128));
  CHECK(log_rational(BigRational(1, 3)) == -log_rational(3));
  CHECK(log_rational(make_rational(1, BigInt("1000000000000000000000"))) ==
        -log_rational(BigInt("1000000000000000000000")));

  SUBCASE("log 2 against the reference constant") {
    // log 2 = 0.693147180559945309417232121458176568075500134360255254120680...
    const BigRational ref = make_rational(BigInt("69314718055994530941723212145817656807550013436025525412068"),
                                          BigInt("100000000000000000000000000000000000000000000000000000000000"));
    for (mpfr_prec_t p : {64, 128, 160}) {
      const HighPrecisionReal err =
          (log_rational(2, p) - HighPrecisionReal(ref, 256)).abs();
      CHECK(err.to_double() <= std::ldexp(1.0, static_cast<int>(1 - p)));
    }
  }

  SUBCASE("near one") {
    const BigRational q = 1 + make_rational(1, pow2(200));
    const HighPrecisionReal l = log_rational(q, 128);
    // log(1 + e) = e - e^2/2 + ...; relative accuracy must survive.
    const HighPrecisionReal e(make_rational(1, pow2(200)), 256);
    CHECK(((l - e) / e).abs().to_double() <= std::ldexp(1.0, -120));
  }

  SUBCASE("exp inverts log on huge random rationals") {
    std::mt19937_64 rng(7);
    gmp_randclass gen(gmp_randinit_default);
    gen.seed(12345);
    std::uniform_int_distribution<unsigned long> bits(1, 1660);  // up to ~500 digits
    for (int i = 0; i < 200; ++i) {
      BigInt num = gen.get_z_bits(bits(rng)) + 1;
      BigInt den = gen.get_z_bits(bits(rng)) + 1;
      const BigRational q = make_rational(num, den);
      for (mpfr_prec_t p : {64, 128, 200}) {
        const HighPrecisionReal back = log_rational(q, p).exp();
        const HighPrecisionReal exact(q, p + 64);
        const HighPrecisionReal rel = ((back - exact) / exact).abs();
        CHECK_MESSAGE(rel.to_double() <= std::ldexp(1.0, static_cast<int>(8 - p)),
                      "q=" << to_string(q) << " p=" << p);
      }
    }
  }

  CHECK_THROWS_AS(log_rational(0), DomainError);
  CHECK_THROWS_AS(log_rational(BigRational(-1, 2)), DomainError);
}

TEST_CASE("HighPrecisionReal basics") {
  const HighPrecisionReal a(3, 128);
  const HighPrecisionReal b(4, 96);
  CHECK((a + b).precision() == 128);
  CHECK((a * b).to_double() == 12.0);
  CHECK((b / a).to_string(9) == "1.33333333");
  CHECK(a < b);
  CHECK(HighPrecisionReal::pi(64).to_string(9) == "3.14159265");
  HighPrecisionReal c = a;
  c = b;
  CHECK(c == b);
  HighPrecisionReal d = std::move(c);
  CHECK(d == b);
}
