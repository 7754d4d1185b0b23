#include "morse/errors.hpp"
#include "morse/series.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace morse;

namespace {

Series1 ser(std::initializer_list<BigRational> c) { return Series1(std::vector<BigRational>(c)); }

Series1 random_series(std::mt19937_64& rng, unsigned order) {
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 30);
  Series1 s(order);
  for (unsigned k = 0; k <= order; ++k) {
    s[k] = make_rational(num(rng), den(rng));
  }
  return s;
}

Series2 random_series2(std::mt19937_64& rng, unsigned v_bound, int terms) {
  std::uniform_int_distribution<unsigned> exp_u(0, 6);
  std::uniform_int_distribution<unsigned> exp_v(0, v_bound);
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 9);
  Series2 s(v_bound);
  for (int i = 0; i < terms; ++i) {
    s.add_term(exp_u(rng), exp_v(rng), make_rational(num(rng), den(rng)));
  }
  return s;
}

} // namespace

TEST_CASE("univariate arithmetic") {
  const Series1 a({1, 1});
  const Series1 b({1, -1});
  const Series1 prod = a * b;
  CHECK(prod == ser({1, 0}));
  CHECK(ser({1, 1, 0}) * ser({1, -1, 0}) == ser({1, 0, -1}));
  CHECK(a + b == ser({2, 0}));
  CHECK(a - b == ser({0, 2}));
  CHECK(derivative(ser({5, 3, 2, 1})) == ser({3, 4, 3}));
  CHECK(derivative(ser({7})) == ser({0}));
  CHECK(BigRational(1, 2) * ser({2, 4}) == ser({1, 2}));
  // Mixed orders truncate to the shorter operand.
  CHECK((ser({1, 2, 3}) + ser({1})).order() == 0);

  CHECK(evaluate(ser({1, 2, 3}), HighPrecisionReal(2, 128)).to_double() == 17.0);
  CHECK(ser({0, BigRational(1, 3)}).to_string() == "0: 0\n1: 1/3\n");
}

TEST_CASE("univariate ring laws on random series") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<unsigned> ord(0, 20);
    const unsigned n = ord(rng);
    const Series1 a = random_series(rng, n);
    const Series1 b = random_series(rng, n);
    const Series1 c = random_series(rng, n);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) - b == a);
    // Leibniz rule, exact through the retained order.
    CHECK(derivative(a * b) == derivative(a) * b + a * derivative(b));
  }
}

TEST_CASE("tangent series") {
  const Series1 t = tan_series_bernoulli(10);
  CHECK(t.order() == 21);
  CHECK(t[0] == 0);
  CHECK(t[1] == 1);
  CHECK(t[3] == BigRational(1, 3));
  CHECK(t[5] == BigRational(2, 15));
  CHECK(t[7] == BigRational(17, 315));
  for (unsigned k = 0; k <= 21; k += 2) {
    CHECK(t[k] == 0);
  }
  CHECK(tan_coefficient(0) == 1);
  CHECK(tan_coefficient(2) == BigRational(2, 15));

  SUBCASE("tan times cos is sin") {
    const unsigned order = 41;
    const Series1 tan = tan_series_bernoulli(20);
    const Series1 sin(oracle::sin_coefficients(order));
    const Series1 cos(oracle::cos_coefficients(order));
    CHECK(tan * cos == sin);
  }

  SUBCASE("ODE route") {
    const Series1 u = ode_lower_series(10);
    CHECK(u[1] == 1);
    CHECK(u[3] == BigRational(1, 6));
    CHECK(u[5] == BigRational(1, 30));
    // u' = 1 + u^2 / 2, checked coefficientwise.
    const Series1 lhs = derivative(u);
    Series1 one(lhs.order());
    one[0] = 1;
    CHECK(lhs == one + BigRational(1, 2) * (u * u));
  }

  SUBCASE("both routes agree after the sqrt(2) scaling") {
    const Series1 ode = ode_lower_series(50);
    const Series1 scaled = scaled_tan_series(50);
    CHECK(ode == scaled);
    for (unsigned k = 0; k <= 50; ++k) {
      CHECK(ode[2 * k + 1] == tan_coefficient(k) / BigRational(pow2(k)));
    }
  }
}

TEST_CASE("bivariate arithmetic") {
  Series2 s(3);
  s.add_term(1, 2, BigRational(1, 2));
  s.add_term(0, 4, 7);  // beyond V, dropped
  s.add_term(2, 0, 3);
  s.add_term(2, 0, -3);  // cancels
  CHECK(s.terms().size() == 1);
  CHECK(s.coefficient(1, 2) == BigRational(1, 2));
  CHECK(s.coefficient(9, 9) == 0);
  CHECK(s.to_string() == "1 2: 1/2\n");

  const Series2 x = Series2::monomial(1, 0, 1, 3);
  const Series2 y = Series2::monomial(0, 2, 2, 3);
  const Series2 xy = x * y;
  CHECK(xy.coefficient(1, 2) == 2);
  CHECK((y * y).terms().empty());  // v^4 exceeds V

  CHECK(derivative_u(Series2::monomial(3, 1, 2, 3)) == Series2::monomial(2, 1, 6, 3));
  const Series2 dv = derivative_v(Series2::monomial(3, 2, 2, 3));
  CHECK(dv.v_bound() == 2);
  CHECK(dv == Series2::monomial(3, 1, 4, 2));
  CHECK_THROWS_AS(derivative_v(Series2(0)), RangeError);
}

TEST_CASE("bivariate ring laws on random series") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 30; ++trial) {
    const Series2 a = random_series2(rng, 6, 12);
    const Series2 b = random_series2(rng, 6, 12);
    const Series2 c = random_series2(rng, 6, 12);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - b) + b == a);
    CHECK(derivative_u(a * b) == derivative_u(a) * b + a * derivative_u(b));
  }
}

TEST_CASE("generating functions from the table") {
  const HTable t = build_htable(30);
  const Series1 xi = xi_univariate(t, 5);
  CHECK(xi.order() == 11);
  CHECK(xi[1] == 1);
  CHECK(xi[3] == BigRational(1, 3));
  CHECK(xi[5] == BigRational(19, 120));
  CHECK(xi[2] == 0);
  CHECK_THROWS_AS(xi_univariate(t, 16), RangeError);

  const Series2 xi2 = xi_bivariate(t, 5);
  CHECK(xi2.coefficient(0, 1) == 1);
  CHECK(xi2.coefficient(1, 2) == BigRational(1, 2));
  CHECK(xi2.coefficient(0, 3) == BigRational(1, 3));
  CHECK(xi2.coefficient(1, 4) == BigRational(11, 24));
  CHECK(xi2.coefficient(1, 1) == 0);
  CHECK_THROWS_AS(xi_bivariate(t, 32), RangeError);

  SUBCASE("the u = 0 slice is the univariate series") {
    const Series2 big = xi_bivariate(t, 31);
    const Series1 uni = xi_univariate(t, 15);
    for (unsigned k = 0; k <= 31; ++k) {
      CHECK(big.coefficient(0, k) == uni[k]);
    }
  }
}

TEST_CASE("the table satisfies the quasilinear PDE") {
  const HTable t = build_htable(30);
  for (unsigned v : {1u, 2u, 5u, 25u}) {
    const Series2 r = pde_residual(xi_bivariate(t, v));
    CHECK(r.v_bound() == v - 1);
    CHECK_MESSAGE(r.terms().empty(), "V=" << v << "\n" << r.to_string());
  }
  CHECK_THROWS_AS(pde_residual(Series2(0)), RangeError);

  SUBCASE("a perturbed coefficient is detected") {
    Series2 xi = xi_bivariate(t, 8);
    xi.add_term(0, 5, BigRational(1, 1000));
    CHECK_FALSE(pde_residual(xi).terms().empty());
  }
}
