#include "morse/errors.hpp"
#include "morse/recurrence.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <system_error>

namespace morse {

namespace {

constexpr std::string_view kHeaderPrefix = "morse-htable v1 W=";

unsigned parse_unsigned(std::string_view s, bool& ok) {
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  ok = ec == std::errc{} && ptr == s.data() + s.size() && !s.empty() &&
       (s.size() == 1 || s.front() != '0');
  return value;
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& line, const std::string& why) {
  throw ParseError("malformed htable cache at line " + std::to_string(line_no) + " (" + why +
                   "): '" + line.substr(0, 120) + (line.size() > 120 ? "...'" : "'"));
}

// Exclusive advisory lock on "<cache>.lock", released on destruction.
class CacheLock {
public:
  explicit CacheLock(const std::filesystem::path& cache) {
    const auto lock_path = cache.string() + ".lock";
    fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ >= 0 && ::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd_);
      fd_ = -1;
      busy_ = true;
    }
  }
  CacheLock(const CacheLock&) = delete;
  CacheLock& operator=(const CacheLock&) = delete;
  ~CacheLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }

  bool held() const { return fd_ >= 0; }
  bool busy() const { return busy_; }

private:
  int fd_ = -1;
  bool busy_ = false;
};

} // namespace

void write_htable(std::ostream& out, const HTable& table) {
  out << kHeaderPrefix << table.weight_bound() << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto [x, y] = HTable::coordinates(i);
    out << x << ' ' << y << ' ' << to_string(table.entries()[i]) << '\n';
  }
}

HTable read_htable(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) {
    throw ParseError("malformed htable cache at line 1 (empty file)");
  }
  if (!line.starts_with(kHeaderPrefix)) {
    malformed(line_no, line, "bad header");
  }
  bool ok = false;
  const unsigned w = parse_unsigned(std::string_view(line).substr(kHeaderPrefix.size()), ok);
  if (!ok) {
    malformed(line_no, line, "bad weight bound");
  }

  const std::size_t expected = HTable::weight_offset(w + 1);
  std::vector<BigRational> entries;
  entries.reserve(expected);
  unsigned cw = 0;
  unsigned cx = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (entries.size() == expected) {
      malformed(line_no, line, "data after the last entry");
    }
    const std::string_view view(line);
    const auto s1 = view.find(' ');
    const auto s2 = s1 == std::string_view::npos ? s1 : view.find(' ', s1 + 1);
    if (s2 == std::string_view::npos) {
      malformed(line_no, line, "expected 'x y p/q'");
    }
    bool okx = false;
    bool oky = false;
    const unsigned x = parse_unsigned(view.substr(0, s1), okx);
    const unsigned y = parse_unsigned(view.substr(s1 + 1, s2 - s1 - 1), oky);
    if (!okx || !oky) {
      malformed(line_no, line, "bad coordinates");
    }
    if (x != cx || y != (cw - cx) / 2) {
      malformed(line_no, line,
                "expected entry " + std::to_string(cx) + " " + std::to_string((cw - cx) / 2));
    }
    BigRational value;
    try {
      value = parse_rational(view.substr(s2 + 1));
    } catch (const ParseError& e) {
      malformed(line_no, line, e.what());
    }
    if (sgn(value) <= 0) {
      malformed(line_no, line, "entry must be positive");
    }
    entries.push_back(std::move(value));
    cx += 2;
    if (cx > cw) {
      ++cw;
      cx = cw % 2;
    }
  }
  if (entries.size() != expected) {
    throw ParseError("malformed htable cache at line " + std::to_string(line_no + 1) +
                     " (truncated: " + std::to_string(entries.size()) + " of " +
                     std::to_string(expected) + " entries)");
  }
  return HTable(w, std::move(entries));
}

HTable load_htable(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::filesystem::filesystem_error("cannot open htable cache", path,
                                            std::make_error_code(std::errc::io_error));
  }
  return read_htable(in);
}

void save_htable(const std::filesystem::path& path, const HTable& table) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw std::filesystem::filesystem_error("cannot write htable cache", tmp,
                                              std::make_error_code(std::errc::permission_denied));
    }
    write_htable(out, table);
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::filesystem::filesystem_error("short write to htable cache", tmp,
                                              std::make_error_code(std::errc::io_error));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw std::filesystem::filesystem_error("cannot replace htable cache", path, ec);
  }
}

CachedBuild build_htable_cached(unsigned weight_bound, const std::filesystem::path& path) {
  CachedBuild result;
  HTable base;
  if (std::filesystem::exists(path)) {
    base = load_htable(path);
    result.loaded = true;
  }
  if (base.weight_bound() >= weight_bound && result.loaded) {
    result.table = std::move(base);
    return result;
  }
  result.table = extend_htable(base, weight_bound);
  result.extended = true;

  CacheLock lock(path);
  if (!lock.held()) {
    result.warnings.push_back(lock.busy() ? "cache " + path.string() +
                                                " is locked by another process; not saved"
                                          : "cannot create lock for cache " + path.string() +
                                                "; not saved");
    return result;
  }
  try {
    save_htable(path, result.table);
    result.saved = true;
  } catch (const std::exception& e) {
    result.warnings.push_back(std::string("cache not saved: ") + e.what());
  }
  return result;
}

} // namespace morse
