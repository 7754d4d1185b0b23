#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace morse::cli {

/// Exit codes shared by every command.
enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kIoError = 3,
};

/// Environment variable naming the default table cache file.
inline constexpr const char* kCacheEnv = "MORSE_HTABLE_CACHE";

/// Runs one command. `args` excludes the program name; `in` feeds encode /
/// decode when no file is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

} // namespace morse::cli
