#include "morse/cli.hpp"

#include "morse/analysis.hpp"
#include "morse/errors.hpp"
#include "morse/recurrence.hpp"
#include "morse/series.hpp"
#include "morse/trees.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace morse::cli {

namespace {

struct Options {
  unsigned max_n = 0;
  std::string points;
  bool points_given = false;
  std::string format = "text";
  std::string cache;
  long precision = HighPrecisionReal::default_precision;
  unsigned order = 25;
  unsigned max_k = 50;
  bool extended = false;
  std::string which;
  unsigned oracle_n = 0;
  std::string input;
};

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

std::optional<std::filesystem::path> cache_path(const Options& opt) {
  if (!opt.cache.empty()) {
    return std::filesystem::path(opt.cache);
  }
  if (const char* env = std::getenv(kCacheEnv); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

HTable obtain_table(unsigned weight_bound, const Options& opt, std::ostream& err) {
  const auto path = cache_path(opt);
  if (!path) {
    return build_htable(weight_bound);
  }
  CachedBuild built = build_htable_cached(weight_bound, *path);
  for (const auto& w : built.warnings) {
    err << "warning: " << w << '\n';
  }
  return std::move(built.table);
}

std::vector<unsigned> parse_points(const std::string& text) {
  std::vector<unsigned> points;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 1 || v > 100000) {
        throw std::invalid_argument(item);
      }
      points.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw UsageError("--points expects a comma-separated list of integers >= 1, got '" + item +
                       "'");
    }
  }
  if (points.empty()) {
    throw UsageError("--points must name at least one n >= 1");
  }
  return points;
}

int cmd_census(const Options& opt, std::ostream& out, std::ostream& err) {
  const HTable table = obtain_table(2 * opt.max_n, opt, err);
  if (opt.format == "json") {
    auto records = nlohmann::ordered_json::array();
    for (unsigned n = 0; n <= opt.max_n; ++n) {
      records.push_back({{"n", n}, {"h", to_string(h(table, n))}, {"g", g(table, n).get_str()}});
    }
    out << records.dump(2) << '\n';
  } else if (opt.format == "csv") {
    out << "n,h,g\n";
    for (unsigned n = 0; n <= opt.max_n; ++n) {
      out << n << ',' << to_string(h(table, n)) << ',' << g(table, n).get_str() << '\n';
    }
  } else {
    for (unsigned n = 0; n <= opt.max_n; ++n) {
      out << "n=" << n << " g=" << g(table, n).get_str() << " h=" << to_string(h(table, n))
          << '\n';
    }
  }
  return kSuccess;
}

int cmd_table(const Options& opt, std::ostream& out, std::ostream& err) {
  const std::vector<unsigned> points =
      opt.points_given ? parse_points(opt.points) : kReferenceTablePoints;
  const unsigned max_n = *std::max_element(points.begin(), points.end());
  const HTable table = obtain_table(2 * max_n, opt, err);
  std::vector<AsymptoticRow> rows;
  rows.reserve(points.size());
  for (unsigned n : points) {
    rows.push_back(delta(n, table, opt.precision));
  }

  if (opt.format == "csv") {
    write_rows_csv(out, rows);
    return kSuccess;
  }
  if (opt.format == "json") {
    out << rows_to_json(rows) << '\n';
    return kSuccess;
  }
  out << std::left << std::setw(6) << "n" << std::setw(18) << "log_h" << std::setw(18)
      << "delta" << "delta/n\n";
  for (const auto& r : rows) {
    out << std::setw(6) << r.n << std::setw(18) << r.log_h.to_string(9) << std::setw(18)
        << r.delta.to_string(9) << r.delta_over_n.to_string(9) << '\n';
  }
  std::set<unsigned> distinct(points.begin(), points.end());
  if (distinct.size() >= 4) {
    const AsymptoticFit fit = estimate_a(rows);
    std::ostringstream a;
    a << std::setprecision(9) << fit.a;
    out << "heuristic least-squares fit delta ~ a n + b log n + c: a = " << a.str()
        << " (no error bars)\n";
  }
  return kSuccess;
}

// -- verify ------------------------------------------------------------------

int report(std::ostream& out, const std::string& name, const std::string& scope,
           const std::optional<std::string>& counterexample) {
  if (counterexample) {
    out << "verify " << name << ": FAIL (" << scope << ")\n"
        << "first counterexample: " << *counterexample << '\n';
    return kVerificationFailed;
  }
  out << "verify " << name << ": pass (" << scope << ")\n";
  return kSuccess;
}

int verify_bounds(const Options& opt, std::ostream& out, std::ostream& err) {
  const HTable table = obtain_table(2 * opt.max_n, opt, err);
  const Series1 lower = scaled_tan_series(opt.max_n);
  std::optional<std::string> bad;
  for (unsigned n = 0; n <= opt.max_n && !bad; ++n) {
    const std::string at = "n=" + std::to_string(n) + ", h(n)=" + to_string(h(table, n));
    if (!check_lower_bound(n, table, lower)) {
      bad = at + " below u_n=" + to_string(lower[2 * n + 1]);
    } else if (!check_upper_bound(n, table)) {
      bad = at + " above min(C_n, 4^n/(n+1))";
    } else if (n >= 1 && g(table, n) >= factorial(2 * n + 1)) {
      bad = at + " has g(n) >= (2n+1)!";
    }
  }
  return report(out, "bounds",
                "u_n <= h(n) <= C_n, g(n) <= 4^n (2n+1)!/(n+1), g(n) < (2n+1)! for n <= " +
                    std::to_string(opt.max_n),
                bad);
}

int verify_conjecture(const Options& opt, std::ostream& out, std::ostream& err) {
  const HTable table = obtain_table(2 * opt.max_n, opt, err);
  std::optional<std::string> bad;
  for (unsigned n = 1; n <= opt.max_n && !bad; ++n) {
    if (!check_conjecture_a(n, table)) {
      bad = "n=" + std::to_string(n) + ", h(n)=" + to_string(h(table, n));
    }
  }
  return report(out, "conjecture", "h(n) < 1 for 1 <= n <= " + std::to_string(opt.max_n), bad);
}

int verify_tan(const Options& opt, std::ostream& out) {
  const Series1 ode = ode_lower_series(opt.max_k);
  const Series1 tan = scaled_tan_series(opt.max_k);
  std::optional<std::string> bad;
  for (unsigned k = 0; k <= ode.order() && !bad; ++k) {
    if (ode[k] != tan[k]) {
      bad = "coefficient of t^" + std::to_string(k) + ": ode " + to_string(ode[k]) +
            ", Bernoulli " + to_string(tan[k]);
    }
  }
  return report(out, "tan", "ODE series == T_k/2^k for k <= " + std::to_string(opt.max_k), bad);
}

int verify_pde(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.order == 0) {
    throw UsageError("--order must be >= 1");
  }
  const HTable table = obtain_table(opt.order - 1, opt, err);
  const Series2 residual = pde_residual(xi_bivariate(table, opt.order));
  std::optional<std::string> bad;
  if (!residual.terms().empty()) {
    const auto& [e, c] = *residual.terms().begin();
    bad = "u^" + std::to_string(e.first) + " v^" + std::to_string(e.second) + ": " + to_string(c);
  }
  return report(out, "pde",
                "residual coefficients with v-exponent <= " + std::to_string(opt.order - 1) +
                    " vanish",
                bad);
}

int verify_elliptic(const Options& opt, std::ostream& out, std::ostream& err) {
  constexpr unsigned kTerms = 50;
  constexpr double kTol = 1e-12;
  constexpr double kBound = 1e-8;
  const HTable table = obtain_table(2 * kTerms, opt, err);
  std::optional<std::string> bad;
  for (double xi : {0.05, 0.1, 0.2}) {
    const double e = elliptic_round_trip_error(xi, table, kTerms, kTol);
    if (!(e <= kBound)) {
      std::ostringstream s;
      s << "ξ*=" << xi << " error " << e;
      bad = s.str();
      break;
    }
  }
  return report(out, "elliptic", "|xi(θ(ξ*)) - ξ*| <= 1e-8 for ξ* in {0.05, 0.1, 0.2}", bad);
}

int verify_arnold(const Options& opt, std::ostream& out, std::ostream& err) {
  std::vector<unsigned> points;
  for (unsigned n : kReferenceTablePoints) {
    if (n <= opt.max_n) {
      points.push_back(n);
    }
  }
  if (points.empty()) {
    throw UsageError("verify arnold needs --max-n >= 10");
  }
  const HTable table = obtain_table(2 * points.back(), opt, err);
  std::optional<std::string> bad;
  std::optional<HighPrecisionReal> prev;
  const HighPrecisionReal two(2, opt.precision);
  for (unsigned n : points) {
    const HighPrecisionReal r = arnold_ratio(n, table, opt.precision);
    out << "n=" << n << " log g(n)/(n log n)=" << r.to_string(9) << '\n';
    if (!bad && !(r < two)) {
      bad = "n=" + std::to_string(n) + " ratio not below 2";
    }
    if (!bad && prev && !(*prev < r)) {
      bad = "n=" + std::to_string(n) + " ratio not increasing";
    }
    prev = r;
  }
  out << "note: the ratio tends to exactly 2 as n -> infinity; finite n only shows the trend\n";
  return report(out, "arnold", "strictly increasing and < 2 on the sample points", bad);
}

// -- trees -------------------------------------------------------------------

int cmd_oracle(const Options& opt, std::ostream& out) {
  const auto trees = enumerate_morse_trees(opt.oracle_n, opt.extended);
  const HTable table = build_htable(2 * opt.oracle_n);
  const BigInt recurrence = g(table, opt.oracle_n);
  std::set<EncodedPair> images;
  bool round_trip = true;
  for (const auto& t : trees) {
    EncodedPair p = encode(t);
    round_trip = round_trip && decode(p) == t;
    images.insert(std::move(p));
  }
  const bool injective = images.size() == trees.size();
  out << "oracle=" << trees.size() << " recurrence=" << recurrence.get_str()
      << " injective=" << (injective ? "yes" : "no") << '\n';
  const bool ok = recurrence == BigInt(static_cast<unsigned long>(trees.size())) && injective &&
                  round_trip;
  return ok ? kSuccess : kVerificationFailed;
}

std::string read_input(const Options& opt, std::istream& in) {
  std::ostringstream buf;
  if (opt.input.empty() || opt.input == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(opt.input);
    if (!file) {
      throw std::filesystem::filesystem_error("cannot open input", opt.input,
                                              std::make_error_code(std::errc::io_error));
    }
    buf << file.rdbuf();
  }
  return buf.str();
}

int cmd_encode(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
  const MorseTree t = parse_morse_tree(read_input(opt, in));
  if (!validate_morse_tree(t)) {
    err << "error: input is not a Morse tree\n";
    return kVerificationFailed;
  }
  out << to_string(encode(t));
  return kSuccess;
}

int cmd_decode(const Options& opt, std::istream& in, std::ostream& out) {
  out << to_string(decode(parse_encoded_pair(read_input(opt, in))));
  return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact census of Morse functions on the two-sphere", "morse"};
  app.require_subcommand(1);
  Options opt;

  const auto add_cache = [&](CLI::App* sub) {
    sub->add_option("--cache", opt.cache,
                    std::string("table cache file (default: $") + kCacheEnv + ")");
  };
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
  };

  auto* census = app.add_subcommand("census", "g(n) and h(n) for 0 <= n <= max-n");
  census->add_option("--max-n", opt.max_n, "largest n")->required();
  add_format(census);
  add_cache(census);

  auto* table = app.add_subcommand("table", "finite-n remainder table delta_n/n");
  table->add_option("--points", opt.points, "comma-separated n values (default 10,...,200)");
  table->add_option("--precision", opt.precision, "mantissa bits for logarithms")
      ->check(CLI::Range(static_cast<long>(HighPrecisionReal::min_precision), 1L << 20));
  add_format(table);
  add_cache(table);

  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("which", opt.which, "bounds | pde | tan | elliptic | conjecture | arnold")
      ->required()
      ->check(CLI::IsMember({"bounds", "pde", "tan", "elliptic", "conjecture", "arnold"}));
  verify->add_option("--max-n", opt.max_n, "largest n (bounds, conjecture, arnold)")
      ->default_val(200);
  verify->add_option("--max-k", opt.max_k, "largest k (tan)")->default_val(50);
  verify->add_option("--order", opt.order, "v-truncation bound V (pde)")->default_val(25);
  verify->add_option("--precision", opt.precision, "mantissa bits (arnold)")
      ->check(CLI::Range(static_cast<long>(HighPrecisionReal::min_precision), 1L << 20));
  add_cache(verify);

  auto* oracle = app.add_subcommand("oracle", "brute-force Morse tree count vs recurrence");
  oracle->add_option("n", opt.oracle_n, "n (<= 3, or <= 4 with --extended)")->required();
  oracle->add_flag("--extended", opt.extended, "raise the enumeration budget to n = 4");

  auto* enc = app.add_subcommand("encode", "Morse tree -> (PTPT, permutation)");
  enc->add_option("input", opt.input, "file with the tree (default stdin)");
  auto* dec = app.add_subcommand("decode", "(PTPT, permutation) -> Morse tree");
  dec->add_option("input", opt.input, "file with the pair (default stdin)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  opt.points_given = table->count("--points") > 0;
  try {
    if (census->parsed()) {
      return cmd_census(opt, out, err);
    }
    if (table->parsed()) {
      return cmd_table(opt, out, err);
    }
    if (verify->parsed()) {
      if (opt.which == "bounds") {
        return verify_bounds(opt, out, err);
      }
      if (opt.which == "conjecture") {
        return verify_conjecture(opt, out, err);
      }
      if (opt.which == "tan") {
        return verify_tan(opt, out);
      }
      if (opt.which == "pde") {
        return verify_pde(opt, out, err);
      }
      if (opt.which == "elliptic") {
        return verify_elliptic(opt, out, err);
      }
      return verify_arnold(opt, out, err);
    }
    if (oracle->parsed()) {
      return cmd_oracle(opt, out);
    }
    if (enc->parsed()) {
      return cmd_encode(opt, in, out, err);
    }
    return cmd_decode(opt, in, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetError& e) {
    err << "refused: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    // Malformed cache files are I/O errors; malformed tree/pair input is usage.
    const bool cache_problem = std::string_view(e.what()).starts_with("malformed htable cache");
    err << "error: " << e.what() << '\n';
    return cache_problem ? kIoError : kUsage;
  } catch (const NotInImageError& e) {
    err << "error: not in the image of encode: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kVerificationFailed;
  }
}

} // namespace morse::cli
