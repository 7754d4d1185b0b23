#include "morse/series.hpp"

#include "morse/errors.hpp"

#include <algorithm>
#include <sstream>

namespace morse {

Series1::Series1(unsigned order) : coeffs_(order + 1) {}

Series1::Series1(std::vector<BigRational> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) {
    coeffs_.emplace_back(0);
  }
}

std::string Series1::to_string() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    out << k << ": " << morse::to_string(coeffs_[k]) << '\n';
  }
  return out.str();
}

Series1 operator+(const Series1& a, const Series1& b) {
  Series1 r(std::min(a.order(), b.order()));
  for (unsigned k = 0; k <= r.order(); ++k) {
    r[k] = a[k] + b[k];
  }
  return r;
}

Series1 operator-(const Series1& a, const Series1& b) {
  Series1 r(std::min(a.order(), b.order()));
  for (unsigned k = 0; k <= r.order(); ++k) {
    r[k] = a[k] - b[k];
  }
  return r;
}

Series1 operator*(const Series1& a, const Series1& b) {
  Series1 r(std::min(a.order(), b.order()));
  for (unsigned i = 0; i <= r.order(); ++i) {
    if (sgn(a[i]) == 0) {
      continue;
    }
    for (unsigned j = 0; i + j <= r.order(); ++j) {
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

Series1 operator*(const BigRational& c, const Series1& s) {
  Series1 r(s.order());
  for (unsigned k = 0; k <= s.order(); ++k) {
    r[k] = c * s[k];
  }
  return r;
}

Series1 derivative(const Series1& s) {
  if (s.order() == 0) {
    return Series1(0u);
  }
  Series1 r(s.order() - 1);
  for (unsigned k = 1; k <= s.order(); ++k) {
    r[k - 1] = k * s[k];
  }
  return r;
}

HighPrecisionReal evaluate(const Series1& s, const HighPrecisionReal& t) {
  HighPrecisionReal acc(0, t.precision());
  for (unsigned k = s.order() + 1; k-- > 0;) {
    acc = acc * t + HighPrecisionReal(s[k], t.precision());
  }
  return acc;
}

// ---------------------------------------------------------------------------

Series2 Series2::monomial(unsigned a, unsigned b, const BigRational& c, unsigned v_bound) {
  Series2 s(v_bound);
  s.add_term(a, b, c);
  return s;
}

BigRational Series2::coefficient(unsigned a, unsigned b) const {
  const auto it = terms_.find({a, b});
  return it == terms_.end() ? BigRational(0) : it->second;
}

void Series2::add_term(unsigned a, unsigned b, const BigRational& c) {
  if (b > v_bound_ || sgn(c) == 0) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace({a, b}, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) {
      terms_.erase(it);
    }
  }
}

Series2 Series2::truncated(unsigned v_bound) const {
  Series2 r(std::min(v_bound, v_bound_));
  for (const auto& [e, c] : terms_) {
    r.add_term(e.first, e.second, c);
  }
  return r;
}

std::string Series2::to_string() const {
  std::ostringstream out;
  for (const auto& [e, c] : terms_) {
    out << e.first << ' ' << e.second << ": " << morse::to_string(c) << '\n';
  }
  return out.str();
}

Series2 operator+(const Series2& a, const Series2& b) {
  Series2 r = a.truncated(b.v_bound());
  for (const auto& [e, c] : b.terms()) {
    r.add_term(e.first, e.second, c);
  }
  return r;
}

Series2 operator-(const Series2& a, const Series2& b) {
  Series2 r = a.truncated(b.v_bound());
  for (const auto& [e, c] : b.terms()) {
    r.add_term(e.first, e.second, -c);
  }
  return r;
}

Series2 operator*(const Series2& a, const Series2& b) {
  Series2 r(std::min(a.v_bound(), b.v_bound()));
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      if (ea.second + eb.second <= r.v_bound()) {
        r.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
      }
    }
  }
  return r;
}

Series2 operator*(const BigRational& c, const Series2& s) {
  Series2 r(s.v_bound());
  for (const auto& [e, x] : s.terms()) {
    r.add_term(e.first, e.second, c * x);
  }
  return r;
}

Series2 derivative_u(const Series2& s) {
  Series2 r(s.v_bound());
  for (const auto& [e, c] : s.terms()) {
    if (e.first > 0) {
      r.add_term(e.first - 1, e.second, e.first * c);
    }
  }
  return r;
}

Series2 derivative_v(const Series2& s) {
  if (s.v_bound() == 0) {
    throw RangeError("d/dv of a series truncated at v^0 has no exact coefficients");
  }
  Series2 r(s.v_bound() - 1);
  for (const auto& [e, c] : s.terms()) {
    if (e.second > 0) {
      r.add_term(e.first, e.second - 1, e.second * c);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

Series1 tan_series_bernoulli(unsigned max_k) {
  const auto bern = bernoulli_numbers(2 * max_k + 2);
  Series1 r(2 * max_k + 1);
  for (unsigned k = 1; k <= max_k + 1; ++k) {
    const BigInt p = pow2(2 * k);
    r[2 * k - 1] = p * (p - 1) * abs(bern[2 * k]) / factorial(2 * k);
  }
  return r;
}

BigRational tan_coefficient(unsigned k) { return tan_series_bernoulli(k)[2 * k + 1]; }

Series1 ode_lower_series(unsigned max_k) {
  std::vector<BigRational> u(max_k + 1);
  u[0] = 1;
  for (unsigned k = 1; k <= max_k; ++k) {
    BigRational sum = 0;
    for (unsigned i = 0; i < k; ++i) {
      sum += u[i] * u[k - 1 - i];
    }
    u[k] = sum / (2 * (2 * k + 1));
  }
  Series1 r(2 * max_k + 1);
  for (unsigned k = 0; k <= max_k; ++k) {
    r[2 * k + 1] = u[k];
  }
  return r;
}

Series1 scaled_tan_series(unsigned max_k) {
  Series1 r = tan_series_bernoulli(max_k);
  for (unsigned k = 0; k <= max_k; ++k) {
    r[2 * k + 1] /= pow2(k);
  }
  return r;
}

Series1 xi_univariate(const HTable& table, unsigned max_n) {
  if (2 * max_n > table.weight_bound()) {
    throw RangeError("xi(θ) through θ^" + std::to_string(2 * max_n + 1) + " needs W >= " +
                     std::to_string(2 * max_n));
  }
  Series1 r(2 * max_n + 1);
  for (unsigned n = 0; n <= max_n; ++n) {
    r[2 * n + 1] = h(table, n);
  }
  return r;
}

Series2 xi_bivariate(const HTable& table, unsigned v_bound) {
  if (v_bound > table.weight_bound() + 1) {
    throw RangeError("xi(u,v) through v^" + std::to_string(v_bound) + " needs W >= " +
                     std::to_string(v_bound - 1));
  }
  Series2 r(v_bound);
  for (unsigned w = 0; w + 1 <= v_bound; ++w) {
    for (unsigned x = w % 2; x <= w; x += 2) {
      r.add_term(x, w + 1, table.at(x, (w - x) / 2));
    }
  }
  return r;
}

Series2 pde_residual(const Series2& xi) {
  const unsigned v = xi.v_bound();
  if (v == 0) {
    throw RangeError("PDE residual needs a series truncated at v^1 or higher");
  }
  const Series2 one = Series2::monomial(0, 0, 1, v);
  const Series2 u = Series2::monomial(1, 0, 1, v);
  const Series2 half_u2 = Series2::monomial(2, 0, BigRational(1, 2), v);
  const Series2 u_xi = u * xi;

  const Series2 transport = (one + u_xi + half_u2) * derivative_u(xi);
  const Series2 source = BigRational(1, 2) * (xi * xi) + u_xi + one;
  return (derivative_v(xi) - transport - source).truncated(v - 1);
}

} // namespace morse
