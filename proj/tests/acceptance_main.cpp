// One line per acceptance criterion; exits non-zero if any fails.
#include <iostream>

#include "planecycles/acceptance.hpp"

int main() {
  planecycles::AcceptanceOptions options;
  options.data_dir = PLANECYCLES_TEST_DATA;
  options.tool = PLANECYCLES_TOOL;
  const auto results = planecycles::run_acceptance(options, std::cout, &std::cerr);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
