#pragma once

#include "morse/exactmath.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace morse {

/// The two-parameter family Ĥ(x, y) for every (x, y) with weight
/// x + 2y <= W. Entries are stored by increasing weight, then increasing x,
/// which is also the order of the cache file.
///
/// h(n) = Ĥ(0, n) and g(n) = (2n+1)! h(n) counts geometric equivalence
/// classes of excellent Morse functions on S^2 with 2n+2 critical points.
class HTable {
public:
  HTable() = default;

  /// Wraps already computed entries. Throws ConsistencyError if the entry
  /// count does not match W or an entry is not strictly positive.
  HTable(unsigned weight_bound, std::vector<BigRational> entries);

  unsigned weight_bound() const { return weight_bound_; }
  std::size_t size() const { return entries_.size(); }

  bool contains(long x, long y) const;
  /// Throws RangeError outside x + 2y <= W.
  const BigRational& at(long x, long y) const;

  /// Entries in storage order; entry i sits at coordinates(i).
  const std::vector<BigRational>& entries() const { return entries_; }

  /// The same table restricted to weight <= w (w <= weight_bound()).
  HTable truncated(unsigned w) const;

  friend bool operator==(const HTable&, const HTable&) = default;

  /// Number of entries with weight < w.
  static std::size_t weight_offset(unsigned w);
  static std::size_t index_of(unsigned x, unsigned y);
  struct Coord {
    unsigned x;
    unsigned y;
  };
  static Coord coordinates(std::size_t index);

private:
  unsigned weight_bound_ = 0;
  std::vector<BigRational> entries_{BigRational(1)};
};

/// Fills Ĥ for all weights <= W. Each entry is solved from the recurrence
/// at its own weight:
///   Ĥ(x, 0) = 2^-x
///   (w+1) Ĥ(x, y) = (x+1) Ĥ(x+1, y-1) + (x+1)/2 Ĥ(x-1, y)
///                   + (x+1)/2 sum_{a<=x, b<=y-1} Ĥ(a, b) Ĥ(x-a, y-1-b)
/// with w = x + 2y and Ĥ = 0 at negative indices (the x = 0 row is the
/// second recurrence).
HTable build_htable(unsigned weight_bound);

/// Extends `base` to a larger weight bound, reusing its entries. Returns
/// `base` unchanged if it already covers `weight_bound`.
HTable extend_htable(const HTable& base, unsigned weight_bound);

/// Integer image K(x, y) = 2^(2x+2y) (x+2y+1)! Ĥ(x, y) used by the fill.
BigInt htable_scale(unsigned x, unsigned y);

/// h(n) = Ĥ(0, n). RangeError when 2n > W.
BigRational h(const HTable& table, unsigned n);

/// g(n) = (2n+1)! h(n). ConsistencyError if the product is not an integer.
BigInt g(const HTable& table, unsigned n);

// Cache file: "morse-htable v1 W=<int>" followed by one "x y p/q" line per
// entry in storage order.

void write_htable(std::ostream& out, const HTable& table);

/// Throws ParseError naming the offending line for any deviation from the
/// format: bad header, wrong or missing coordinates, non-canonical or
/// non-positive values, trailing data.
HTable read_htable(std::istream& in);

HTable load_htable(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
/// Throws std::filesystem::filesystem_error / std::ios_base::failure on I/O
/// problems; a failed write never leaves a partial file at `path`.
void save_htable(const std::filesystem::path& path, const HTable& table);

struct CachedBuild {
  HTable table;
  bool loaded = false;    ///< an existing cache file was read
  bool extended = false;  ///< entries were computed beyond the cache
  bool saved = false;     ///< the cache file was (re)written
  std::vector<std::string> warnings;
};

/// Cache-first build: reads `path` if it exists, extends it to
/// `weight_bound` if needed and writes it back under an advisory lock.
/// A malformed cache is a hard error (ParseError); an unwritable or locked
/// cache only produces a warning and the computed table is still returned.
CachedBuild build_htable_cached(unsigned weight_bound, const std::filesystem::path& path);

} // namespace morse
