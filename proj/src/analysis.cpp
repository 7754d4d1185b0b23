#include "morse/analysis.hpp"

#include "morse/errors.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>
#include <ostream>
#include <set>

namespace morse {

namespace {

HighPrecisionReal half_log_two_pi(mpfr_prec_t precision) {
  const HighPrecisionReal two_pi = HighPrecisionReal(2, precision) * HighPrecisionReal::pi(precision);
  return two_pi.log() / HighPrecisionReal(2, precision);
}

void require_table(unsigned n, const HTable& table) {
  if (2 * n > table.weight_bound()) {
    throw RangeError("n=" + std::to_string(n) + " needs a table with W >= " +
                     std::to_string(2 * n) + ", have W=" + std::to_string(table.weight_bound()));
  }
}

} // namespace

AsymptoticRow delta(unsigned n, const HTable& table, mpfr_prec_t precision) {
  if (n == 0) {
    throw RangeError("delta is defined for n >= 1");
  }
  require_table(n, table);
  const auto p = precision;
  AsymptoticRow row{n, h(table, n), log_rational(h(table, n), p), HighPrecisionReal(p),
                    HighPrecisionReal(p)};

  const HighPrecisionReal two_n(2L * n, p);
  const HighPrecisionReal ratio_log = log_rational(make_rational(n, 2 * n + 1), p);
  const HighPrecisionReal three_halves = HighPrecisionReal(3, p) / HighPrecisionReal(2, p);
  row.delta = row.log_h - two_n * (HighPrecisionReal(1, p) + ratio_log) +
              three_halves * log_integer(2 * n + 1, p) - HighPrecisionReal(1, p) +
              half_log_two_pi(p);
  row.delta_over_n = row.delta / HighPrecisionReal(static_cast<long>(n), p);
  return row;
}

HighPrecisionReal stirling_log_factorial(unsigned long m, mpfr_prec_t precision) {
  const auto p = precision;
  const HighPrecisionReal mm(BigInt(m), p);
  const HighPrecisionReal half = HighPrecisionReal(1, p) / HighPrecisionReal(2, p);
  return (mm + half) * log_integer(m, p) - mm + half_log_two_pi(p);
}

bool check_lower_bound(unsigned n, const HTable& table, const Series1& lower) {
  require_table(n, table);
  if (2 * n + 1 > lower.order()) {
    throw RangeError("lower-bound series too short for n=" + std::to_string(n));
  }
  return h(table, n) >= lower[2 * n + 1];
}

bool check_lower_bound(unsigned n, const HTable& table) {
  return check_lower_bound(n, table, scaled_tan_series(n));
}

bool check_upper_bound(unsigned n, const HTable& table) {
  require_table(n, table);
  const BigRational hn = h(table, n);
  const bool catalan_bound = hn <= BigRational(catalan(n));
  const bool power_bound = hn <= make_rational(pow2(2 * n), n + 1);
  return catalan_bound && power_bound;
}

bool check_conjecture_a(unsigned n, const HTable& table) {
  if (n == 0) {
    throw DomainError("the g(n) < (2n+1)! check starts at n = 1 (h(0) = 1)");
  }
  require_table(n, table);
  return h(table, n) < 1;
}

HighPrecisionReal arnold_ratio(unsigned n, const HTable& table, mpfr_prec_t precision) {
  if (n < 2) {
    throw DomainError("log g(n) / (n log n) needs n >= 2");
  }
  require_table(n, table);
  const HighPrecisionReal log_g =
      log_rational(h(table, n), precision) + log_integer(factorial(2 * n + 1), precision);
  return log_g / (HighPrecisionReal(static_cast<long>(n), precision) * log_integer(n, precision));
}

HighPrecisionReal bernoulli_ratio(unsigned k, mpfr_prec_t precision) {
  if (k == 0) {
    throw DomainError("bernoulli_ratio needs k >= 1");
  }
  const auto p = precision;
  const HighPrecisionReal pi = HighPrecisionReal::pi(p);
  const HighPrecisionReal four_pi2 = HighPrecisionReal(4, p) * pi * pi;
  HighPrecisionReal power(1, p);
  for (unsigned i = 0; i < k; ++i) {
    power = power * four_pi2;
  }
  const BigRational scaled = abs(bernoulli(2 * k)) / (2 * factorial(2 * k));
  return HighPrecisionReal(scaled, p) * power;
}

namespace {

double radicand(double t, double xi) { return t * t * t * t / 4 - t * t + 2 * xi * t + 1; }

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6 * (fa + 4 * fm + fb);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = (a + b) / 2;
  const double lm = (a + m) / 2;
  const double rm = (m + b) / 2;
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15 * tol) {
    return left + right + diff / 15;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

} // namespace

double elliptic_theta(double xi_star, double tol) {
  if (!(xi_star >= 0 && xi_star <= kEllipticMaxXi)) {
    throw DomainError("elliptic_theta supports ξ* in [0, 0.3], got " + std::to_string(xi_star));
  }
  if (!(tol > 0)) {
    throw DomainError("quadrature tolerance must be positive");
  }
  if (xi_star == 0) {
    return 0;
  }
  constexpr int kSamples = 256;
  for (int i = 0; i <= kSamples; ++i) {
    if (!(radicand(xi_star * i / kSamples, xi_star) > 0)) {
      throw DomainError("radicand not positive on [0, ξ*]");
    }
  }
  const auto f = [xi_star](double t) { return 1 / std::sqrt(radicand(t, xi_star)); };
  const double fa = f(0);
  const double fm = f(xi_star / 2);
  const double fb = f(xi_star);
  return adaptive_simpson(f, 0, xi_star, fa, fm, fb, simpson(0, xi_star, fa, fm, fb), tol, 50);
}

double elliptic_round_trip_error(double xi_star, const HTable& table, unsigned terms, double tol) {
  const double theta = elliptic_theta(xi_star, tol);
  const Series1 xi = xi_univariate(table, terms);
  const HighPrecisionReal value = evaluate(xi, HighPrecisionReal(theta, 128));
  return std::abs(value.to_double() - xi_star);
}

AsymptoticFit estimate_a(std::span<const std::pair<double, double>> points) {
  std::set<double> distinct;
  for (const auto& [n, d] : points) {
    if (!(n >= 1)) {
      throw DomainError("fit points need n >= 1");
    }
    distinct.insert(n);
  }
  if (distinct.size() < 4) {
    throw DomainError("the a n + b log n + c fit needs at least 4 distinct n, got " +
                      std::to_string(distinct.size()));
  }
  Eigen::MatrixXd design(static_cast<Eigen::Index>(points.size()), 3);
  Eigen::VectorXd target(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    design(row, 0) = points[i].first;
    design(row, 1) = std::log(points[i].first);
    design(row, 2) = 1;
    target(row) = points[i].second;
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(target);
  return {coef(0), coef(1), coef(2)};
}

AsymptoticFit estimate_a(std::span<const AsymptoticRow> rows) {
  std::vector<std::pair<double, double>> points;
  points.reserve(rows.size());
  for (const auto& r : rows) {
    points.emplace_back(r.n, r.delta.to_double());
  }
  return estimate_a(points);
}

void write_rows_csv(std::ostream& out, std::span<const AsymptoticRow> rows) {
  out << "n,h,log_h,delta,delta_over_n\n";
  for (const auto& r : rows) {
    out << r.n << ',' << to_string(r.h) << ',' << r.log_h.to_string(9) << ','
        << r.delta.to_string(9) << ',' << r.delta_over_n.to_string(9) << '\n';
  }
}

std::string rows_to_json(std::span<const AsymptoticRow> rows) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    records.push_back({{"n", r.n},
                       {"h", to_string(r.h)},
                       {"log_h", std::stod(r.log_h.to_string(9))},
                       {"delta", std::stod(r.delta.to_string(9))},
                       {"delta_over_n", std::stod(r.delta_over_n.to_string(9))}});
  }
  return records.dump(2);
}

} // namespace morse
