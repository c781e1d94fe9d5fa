#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "planecycles/cycle.hpp"
#include "planecycles/levi.hpp"
#include "planecycles/plane.hpp"

namespace planecycles {

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
  std::vector<std::int32_t> witness;
};

struct VerificationReport {
  bool ok = false;
  int k = 0;
  std::vector<Check> checks;
  std::string plane_digest;

  const Check* find(const std::string& name) const;
};

/// Checks a cycle against the embedding definition: k >= 3, injective on
/// points and on lines, every listed incidence present, and each line equal
/// to the join of its two endpoints. Never throws on bad input.
VerificationReport verify_embedding(const Plane& plane, const EmbeddedCycle& cycle);

enum class SearchStatus { found, absent, budget_exhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::absent;
  std::optional<EmbeddedCycle> cycle;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 50'000'000;

/// Depth-first search for a k-gon, i.e. a 2k-cycle of the Levi graph walked
/// on its point side. Cycles are rooted at their least point, so each start is
/// tried in ascending order and only larger points are used after it.
SearchResult brute_force_cycle(const Plane& plane, int k,
                               std::uint64_t budget = kDefaultSearchBudget);

class VerifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExhaustiveMaxPoints = 13;

/// Number of k-gons, counted once per point set + cyclic order (rotations and
/// reflections identified). Throws VerifyError above 13 points.
std::uint64_t count_cycles_exhaustive(const Plane& plane, int k);

struct CertificationReport {
  bool ok = false;
  PlaneKind kind = PlaneKind::partial;
  std::vector<Check> checks;
  std::optional<GraphStats> levi;
  std::string plane_digest;

  const Check* find(const std::string& name) const;
};

/// Axiom checks for the declared kind; projective planes also get the Levi
/// graph certificate ((q+1)-regular, girth 6, diameter 3).
CertificationReport certify_plane(const Plane& plane);

nlohmann::json to_json(const Check& check);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const CertificationReport& report);
nlohmann::json to_json(const SearchResult& result);

std::string_view to_string(SearchStatus status);

}  // namespace planecycles
