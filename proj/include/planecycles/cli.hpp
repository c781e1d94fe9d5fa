#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace planecycles::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kParseError = 1;
inline constexpr int kValidationFailure = 2;
inline constexpr int kConstructionFailed = 3;

enum class Format { json, text, dot };

struct CommandConfig {
  std::string subcommand;
  std::optional<std::string> kind;
  std::optional<std::uint32_t> p;
  std::uint32_t k = 1;
  std::optional<std::string> plane_path;
  std::optional<int> cycle_k;
  std::optional<std::pair<int, int>> range;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  std::optional<Format> format;
};

/// "a..b" with a <= b.
std::optional<std::pair<int, int>> parse_range(const std::string& text);

/// Runs one command. `args` excludes the program name. Output that the
/// determinism contract covers goes to `out`; diagnostics and timings go to
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace planecycles::cli
