#include "morse/recurrence.hpp"

#include "morse/errors.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace morse {

// Storage layout: weight w holds x = w % 2, w % 2 + 2, ..., w, i.e.
// w / 2 + 1 entries, and the entry with abscissa x sits at offset x / 2.

std::size_t HTable::weight_offset(unsigned w) {
  if (w == 0) {
    return 0;
  }
  const std::size_t m = w - 1;
  return m * m / 4 + w;
}

std::size_t HTable::index_of(unsigned x, unsigned y) {
  return weight_offset(x + 2 * y) + x / 2;
}

HTable::Coord HTable::coordinates(std::size_t index) {
  unsigned w = 0;
  while (weight_offset(w + 1) <= index) {
    ++w;
  }
  const auto x = static_cast<unsigned>(w % 2 + 2 * (index - weight_offset(w)));
  return {x, (w - x) / 2};
}

HTable::HTable(unsigned weight_bound, std::vector<BigRational> entries)
    : weight_bound_(weight_bound), entries_(std::move(entries)) {
  if (entries_.size() != weight_offset(weight_bound + 1)) {
    throw ConsistencyError("HTable for W=" + std::to_string(weight_bound) + " needs " +
                           std::to_string(weight_offset(weight_bound + 1)) + " entries, got " +
                           std::to_string(entries_.size()));
  }
  for (const auto& e : entries_) {
    if (sgn(e) <= 0) {
      throw ConsistencyError("HTable entry is not positive: " + to_string(e));
    }
  }
}

bool HTable::contains(long x, long y) const {
  return x >= 0 && y >= 0 && x + 2 * y <= static_cast<long>(weight_bound_);
}

const BigRational& HTable::at(long x, long y) const {
  if (!contains(x, y)) {
    throw RangeError("H(" + std::to_string(x) + "," + std::to_string(y) +
                     ") outside table with W=" + std::to_string(weight_bound_));
  }
  return entries_[index_of(static_cast<unsigned>(x), static_cast<unsigned>(y))];
}

HTable HTable::truncated(unsigned w) const {
  if (w > weight_bound_) {
    throw RangeError("cannot truncate W=" + std::to_string(weight_bound_) + " table to W=" +
                     std::to_string(w));
  }
  return HTable(w, std::vector<BigRational>(entries_.begin(),
                                            entries_.begin() +
                                                static_cast<std::ptrdiff_t>(weight_offset(w + 1))));
}

BigInt htable_scale(unsigned x, unsigned y) {
  const unsigned w = x + 2 * y;
  BigInt s = factorial(w + 1);
  mpz_mul_2exp(s.get_mpz_t(), s.get_mpz_t(), x + w);
  return s;
}

namespace {

// Multiplying the recurrence by 2^(x+w) w! turns it into
//   K(x,y) = (x+1) [ K(x+1,y-1) + 2 K(x-1,y)
//                    + 2 sum_{a,b} binom(w, a+2b+1) K(a,b) K(x-a,y-1-b) ]
// over integers only. The pair (a,b) and its reflection (x-a, y-1-b) have
// weights w1 and w-2-w1 and share the binomial, so the sum is accumulated
// per weight w1 <= (w-2)/2 and doubled below the middle weight.
class ScaledFill {
public:
  explicit ScaledFill(std::vector<BigInt> seed) : k_(std::move(seed)) {}

  void fill_to(unsigned weight_bound) {
    unsigned w = next_weight();
    k_.resize(HTable::weight_offset(weight_bound + 1));
    for (; w <= weight_bound; ++w) {
      binom_row(w);
      for (unsigned x = w % 2; x <= w; x += 2) {
        solve(x, (w - x) / 2);
      }
    }
  }

  std::vector<BigInt> release() { return std::move(k_); }

private:
  unsigned next_weight() const {
    // The seed always holds complete weight levels.
    unsigned w = 0;
    while (HTable::weight_offset(w) < k_.size()) {
      ++w;
    }
    return w;
  }

  const BigInt& at(unsigned x, unsigned y) const { return k_[HTable::index_of(x, y)]; }

  void binom_row(unsigned w) {
    binom_.resize(w + 1);
    binom_[0] = 1;
    for (unsigned i = 1; i <= w; ++i) {
      binom_[i] = binom_[i - 1] * (w - i + 1);
      mpz_divexact_ui(binom_[i].get_mpz_t(), binom_[i].get_mpz_t(), i);
    }
  }

  void solve(unsigned x, unsigned y) {
    BigInt& out = k_[HTable::index_of(x, y)];
    if (y == 0) {
      out = x == 0 ? BigInt(1) : BigInt(2 * (x + 1) * at(x - 1, 0));
      return;
    }
    const unsigned w = x + 2 * y;
    acc_ = 0;
    // w1 ranges over the weights of (a,b) in the rectangle [0,x] x [0,y-1].
    const unsigned total = w - 2;
    for (unsigned w1 = 0; 2 * w1 <= total; ++w1) {
      partial_ = 0;
      const unsigned a_hi = std::min(x, w1);
      const unsigned a_lo = w1 > 2 * (y - 1) ? w1 - 2 * (y - 1) : w1 % 2;
      for (unsigned a = a_lo; a <= a_hi; a += 2) {
        const unsigned b = (w1 - a) / 2;
        mpz_addmul(partial_.get_mpz_t(), at(a, b).get_mpz_t(),
                   at(x - a, y - 1 - b).get_mpz_t());
      }
      if (2 * w1 < total) {
        mpz_mul_2exp(partial_.get_mpz_t(), partial_.get_mpz_t(), 1);
      }
      mpz_addmul(acc_.get_mpz_t(), partial_.get_mpz_t(), binom_[w1 + 1].get_mpz_t());
    }
    mpz_mul_2exp(acc_.get_mpz_t(), acc_.get_mpz_t(), 1);
    acc_ += at(x + 1, y - 1);
    if (x > 0) {
      mpz_addmul_ui(acc_.get_mpz_t(), at(x - 1, y).get_mpz_t(), 2);
    }
    mpz_mul_ui(out.get_mpz_t(), acc_.get_mpz_t(), x + 1);
  }

  std::vector<BigInt> k_;
  std::vector<BigInt> binom_;
  BigInt acc_;
  BigInt partial_;
};

} // namespace

HTable extend_htable(const HTable& base, unsigned weight_bound) {
  if (weight_bound <= base.weight_bound()) {
    return base;
  }
  std::vector<BigInt> seed;
  seed.reserve(HTable::weight_offset(weight_bound + 1));
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto [x, y] = HTable::coordinates(i);
    const BigRational scaled = base.entries()[i] * htable_scale(x, y);
    if (scaled.get_den() != 1) {
      throw ConsistencyError("H(" + std::to_string(x) + "," + std::to_string(y) +
                             ") is not compatible with the recurrence scaling");
    }
    seed.push_back(scaled.get_num());
  }

  ScaledFill fill(std::move(seed));
  fill.fill_to(weight_bound);
  std::vector<BigInt> k = fill.release();

  std::vector<BigRational> entries = base.entries();
  entries.reserve(k.size());
  for (std::size_t i = entries.size(); i < k.size(); ++i) {
    const auto [x, y] = HTable::coordinates(i);
    entries.push_back(make_rational(k[i], htable_scale(x, y)));
  }
  return HTable(weight_bound, std::move(entries));
}

HTable build_htable(unsigned weight_bound) { return extend_htable(HTable(), weight_bound); }

BigRational h(const HTable& table, unsigned n) {
  if (2 * n > table.weight_bound()) {
    throw RangeError("h(" + std::to_string(n) + ") needs W >= " + std::to_string(2 * n) +
                     ", table has W=" + std::to_string(table.weight_bound()));
  }
  return table.at(0, n);
}

BigInt g(const HTable& table, unsigned n) {
  const BigRational value = h(table, n) * factorial(2 * n + 1);
  if (value.get_den() != 1) {
    throw ConsistencyError("(2n+1)! h(n) is not an integer at n=" + std::to_string(n) + ": " +
                           to_string(value));
  }
  return value.get_num();
}

} // namespace morse
