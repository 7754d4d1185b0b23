#pragma once

#include "morse/exactmath.hpp"
#include "morse/recurrence.hpp"
#include "morse/series.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace morse {

/// One row of the finite-n remainder table. delta is
///   log h(n) - 2n (1 + log(n/(2n+1))) + 3/2 log(2n+1) - 1 + 1/2 log(2π),
/// i.e. log g(n) - 2n log n with the Stirling terms of log (2n+1)! removed.
struct AsymptoticRow {
  unsigned n = 0;
  BigRational h;
  HighPrecisionReal log_h;
  HighPrecisionReal delta;
  HighPrecisionReal delta_over_n;
};

/// Sample points of the reference remainder table.
inline const std::vector<unsigned> kReferenceTablePoints{10, 20, 30, 40, 50, 100, 150, 200};

/// Requires n >= 1 and 2n <= W (RangeError otherwise).
AsymptoticRow delta(unsigned n, const HTable& table,
                    mpfr_prec_t precision = HighPrecisionReal::default_precision);

/// (m + 1/2) log m - m + 1/2 log(2π), the Stirling approximation of log m!.
HighPrecisionReal stirling_log_factorial(unsigned long m, mpfr_prec_t precision);

/// h(n) >= u_n, the coefficient of t^(2n+1) in sqrt(2) tan(t/sqrt(2)).
/// The overload taking `lower` reuses a precomputed scaled_tan_series(K)
/// with K >= n.
bool check_lower_bound(unsigned n, const HTable& table);
bool check_lower_bound(unsigned n, const HTable& table, const Series1& lower);

/// h(n) <= C_n and g(n) <= 2^(2n) (2n+1)! / (n+1), both exact.
bool check_upper_bound(unsigned n, const HTable& table);

/// h(n) < 1, i.e. g(n) < (2n+1)!. Requires n >= 1 (DomainError).
bool check_conjecture_a(unsigned n, const HTable& table);

/// log g(n) / (n log n). Requires n >= 2 (DomainError) and 2n <= W.
HighPrecisionReal arnold_ratio(unsigned n, const HTable& table,
                               mpfr_prec_t precision = HighPrecisionReal::default_precision);

/// |B_2k| (4π^2)^k / (2 (2k)!), which equals ζ(2k) and decreases to 1.
HighPrecisionReal bernoulli_ratio(unsigned k,
                                  mpfr_prec_t precision = HighPrecisionReal::default_precision);

/// Largest ξ* accepted by elliptic_theta().
inline constexpr double kEllipticMaxXi = 0.3;

/// θ(ξ*) = ∫_0^ξ* dt / sqrt(t^4/4 - t^2 + 2 ξ* t + 1) by adaptive Simpson
/// to absolute tolerance `tol`. DomainError outside [0, 0.3] or if the
/// radicand is not positive on the interval.
double elliptic_theta(double xi_star, double tol = 1e-12);

/// |sum_{n <= terms} h(n) θ^(2n+1) - ξ*| at θ = elliptic_theta(ξ*, tol).
double elliptic_round_trip_error(double xi_star, const HTable& table, unsigned terms = 50,
                                 double tol = 1e-12);

/// Ordinary least squares of δ_n against a n + b log n + c. Heuristic: the
/// model omits O(1/n) terms and no error bars are claimed.
struct AsymptoticFit {
  double a = 0;
  double b = 0;
  double c = 0;
};

/// Points are (n, δ_n). DomainError unless at least 4 distinct n.
AsymptoticFit estimate_a(std::span<const std::pair<double, double>> points);
AsymptoticFit estimate_a(std::span<const AsymptoticRow> rows);

/// CSV with header "n,h,log_h,delta,delta_over_n"; reals with 9
/// significant digits, h as p/q.
void write_rows_csv(std::ostream& out, std::span<const AsymptoticRow> rows);
/// JSON array of records with the CSV field names.
std::string rows_to_json(std::span<const AsymptoticRow> rows);

} // namespace morse
