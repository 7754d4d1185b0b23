#include "morse/analysis.hpp"
#include "morse/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace morse;

namespace {

const HTable& table200() {
  static const HTable t = build_htable(200);
  return t;
}

// Published remainder table, delta_n / n.
const std::pair<unsigned, double> kPublished[] = {
    {10, -0.634}, {20, -0.750}, {30, -0.790}, {40, -0.811},
    {50, -0.824}, {100, -0.849}, {150, -0.858}, {200, -0.862},
};

} // namespace

TEST_CASE("remainder rows") {
  const HTable& t = table200();
  const AsymptoticRow r10 = delta(10, t);
  CHECK(r10.n == 10);
  CHECK(r10.h == h(t, 10));
  CHECK(std::abs(r10.delta_over_n.to_double() - (-0.634)) <= 0.001);
  CHECK(std::abs(delta(50, t).delta_over_n.to_double() - (-0.824)) <= 0.001);

  SUBCASE("delta is log g(n) - 2n log n with log (2n+1)! replaced by Stirling") {
    for (unsigned n : {10u, 37u, 100u}) {
      const mpfr_prec_t p = 200;
      const HighPrecisionReal log_g =
          log_rational(h(t, n), p) + log_integer(factorial(2 * n + 1), p);
      const HighPrecisionReal nn(static_cast<long>(n), p);
      const HighPrecisionReal expected = log_g - HighPrecisionReal(2, p) * nn * log_integer(n, p) -
                                         (log_integer(factorial(2 * n + 1), p) -
                                          stirling_log_factorial(2 * n + 1, p));
      CHECK((delta(n, t, p).delta - expected).abs().to_double() <= 1e-40);
    }
  }

  CHECK_THROWS_AS(delta(0, t), RangeError);
  CHECK_THROWS_AS(delta(101, t), RangeError);
}

TEST_CASE("Stirling approximation") {
  // log 10! = 15.1044125730755...; Stirling is low by about 1/(12 * 10).
  const double s = stirling_log_factorial(10, 128).to_double();
  CHECK(s < std::log(3628800.0));
  CHECK(std::log(3628800.0) - s == doctest::Approx(1.0 / 120).epsilon(0.01));
}

TEST_CASE("bounds and the g(n) < (2n+1)! check") {
  const HTable& t = table200();
  CHECK(check_lower_bound(0, t));
  CHECK(check_lower_bound(1, t));  // 1/3 >= 1/6
  CHECK(check_lower_bound(2, t));  // 19/120 >= 1/30
  CHECK(check_upper_bound(0, t));
  CHECK(check_upper_bound(2, t));
  CHECK(check_conjecture_a(1, t));
  CHECK_THROWS_AS(check_conjecture_a(0, t), DomainError);
  CHECK_THROWS_AS(check_upper_bound(101, t), RangeError);

  const Series1 lower = scaled_tan_series(100);
  for (unsigned n = 0; n <= 100; ++n) {
    CHECK(check_lower_bound(n, t, lower));
    CHECK(check_upper_bound(n, t));
    if (n >= 1) {
      CHECK(check_conjecture_a(n, t));
    }
  }

  SUBCASE("checks detect a violating table") {
    std::vector<BigRational> e = build_htable(4).entries();
    e[HTable::index_of(0, 2)] = 3;  // h(2) = 3 > C_2 = 2
    const HTable bad(4, e);
    CHECK_FALSE(check_upper_bound(2, bad));
    CHECK_FALSE(check_conjecture_a(2, bad));
    e[HTable::index_of(0, 2)] = BigRational(1, 100);  // below u_2 = 1/30
    CHECK_FALSE(check_lower_bound(2, HTable(4, e)));
  }
}

TEST_CASE("Arnold ratio") {
  const HTable& t = table200();
  HighPrecisionReal prev(0, 128);
  for (unsigned n : {10u, 20u, 30u, 40u, 50u, 100u}) {
    const HighPrecisionReal r = arnold_ratio(n, t);
    CHECK(prev < r);
    CHECK(r < HighPrecisionReal(2, 128));
    prev = r;
  }
  // Cross-check with log (2n+1)! from Stirling (error ~ 1/(24n+12)).
  const unsigned n = 100;
  const HighPrecisionReal via_stirling =
      (log_rational(h(t, n)) + stirling_log_factorial(2 * n + 1, 128)) /
      (HighPrecisionReal(100, 128) * log_integer(100));
  CHECK(std::abs(via_stirling.to_double() - arnold_ratio(n, t).to_double()) < 1e-5);
  CHECK_THROWS_AS(arnold_ratio(1, t), DomainError);
}

TEST_CASE("Bernoulli ratio decreases to one") {
  CHECK(bernoulli_ratio(1).to_double() == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-15));
  CHECK(bernoulli_ratio(5).to_double() == doctest::Approx(1.0009945751278181).epsilon(1e-14));
  CHECK(bernoulli_ratio(10).to_double() == doctest::Approx(1.0000009539620339).epsilon(1e-14));
  HighPrecisionReal prev = bernoulli_ratio(1);
  for (unsigned k = 2; k <= 25; ++k) {
    const HighPrecisionReal r = bernoulli_ratio(k);
    CHECK(r < prev);
    CHECK(HighPrecisionReal(1, 128) < r);
    prev = r;
  }
  CHECK_THROWS_AS(bernoulli_ratio(0), DomainError);
}

TEST_CASE("elliptic round trip") {
  const HTable& t = table200();
  CHECK(elliptic_theta(0) == 0);
  // For small ξ* the integrand is close to 1.
  CHECK(elliptic_theta(0.01) == doctest::Approx(0.01).epsilon(1e-3));
  for (double xi : {0.05, 0.1, 0.2}) {
    CHECK(elliptic_round_trip_error(xi, t) <= 1e-8);
  }
  CHECK(elliptic_round_trip_error(0.3, t) <= 1e-6);

  CHECK_THROWS_AS(elliptic_theta(-0.1), DomainError);
  CHECK_THROWS_AS(elliptic_theta(0.31), DomainError);
  CHECK_THROWS_AS(elliptic_theta(std::nan("")), DomainError);
  CHECK_THROWS_AS(elliptic_theta(0.1, 0), DomainError);
}

TEST_CASE("least-squares fit of the remainder") {
  SUBCASE("recovers an exact model") {
    std::vector<std::pair<double, double>> pts;
    for (double n : {10.0, 20.0, 50.0, 80.0, 120.0}) {
      pts.emplace_back(n, -0.5 * n + 0.25 * std::log(n) + 2);
    }
    const AsymptoticFit fit = estimate_a(pts);
    CHECK(std::abs(fit.a + 0.5) < 1e-9);
    CHECK(std::abs(fit.b - 0.25) < 1e-8);
    CHECK(std::abs(fit.c - 2) < 1e-7);
  }

  SUBCASE("on the published rows") {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, d] : kPublished) {
      pts.emplace_back(n, d * n);
    }
    const double a = estimate_a(pts).a;
    CHECK(a > -0.9);
    CHECK(a <= -0.8);
  }

  SUBCASE("on computed rows, stable across subsets") {
    const HTable& t = table200();
    std::vector<AsymptoticRow> wide;
    std::vector<AsymptoticRow> narrow;
    for (unsigned n = 50; n <= 100; n += 10) {
      wide.push_back(delta(n, t));
      if (n >= 70) {
        narrow.push_back(delta(n, t));
      }
    }
    const double a1 = estimate_a(wide).a;
    const double a2 = estimate_a(narrow).a;
    CHECK(a1 > -0.9);
    CHECK(a1 <= -0.8);
    CHECK(std::abs(a1 - a2) < 0.02);
  }

  const std::vector<std::pair<double, double>> three{{1, 1}, {2, 2}, {3, 3}, {3, 4}};
  CHECK_THROWS_AS(estimate_a(three), DomainError);
  const std::vector<std::pair<double, double>> zero{{0, 1}, {2, 2}, {3, 3}, {4, 4}};
  CHECK_THROWS_AS(estimate_a(zero), DomainError);
}

TEST_CASE("row serialization") {
  const HTable t = build_htable(40);
  const std::vector<AsymptoticRow> rows{delta(10, t), delta(20, t)};
  std::ostringstream csv;
  write_rows_csv(csv, rows);
  const std::string text = csv.str();
  CHECK(text.starts_with("n,h,log_h,delta,delta_over_n\n10," + to_string(h(t, 10)) + ","));
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);

  const std::string json = rows_to_json(rows);
  CHECK(json.find("\"n\": 10") != std::string::npos);
  CHECK(json.find("\"h\": \"" + to_string(h(t, 20)) + "\"") != std::string::npos);
  CHECK(json.find("\"delta_over_n\": -0.63") != std::string::npos);
}
