#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace planecycles {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  /// Wall-clock notes; kept out of `detail` so reports are reproducible.
  std::string timing;
};

struct AcceptanceOptions {
  /// Directory holding nearfield9.txt; the externally supplied plane is
  /// skipped when it is missing.
  std::optional<std::filesystem::path> data_dir;
  /// Built tool used for the determinism runs. Without it the commands run
  /// in-process.
  std::optional<std::filesystem::path> tool;
  /// Fuzzed frames per plane in the property suites.
  int seeds = 8;
};

/// Runs the nine acceptance criteria, printing one line per criterion to
/// `report` as each finishes. Timings go to `timings` only.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& report,
                                           std::ostream* timings = nullptr);

std::string format_result(const CriterionResult& result);

}  // namespace planecycles
