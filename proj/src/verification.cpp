#include "planecycles/verification.hpp"

#include <algorithm>
#include <map>

namespace planecycles {

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const Check* CertificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerificationReport verify_embedding(const Plane& plane, const EmbeddedCycle& cycle) {
  VerificationReport report;
  report.k = cycle.k();
  report.plane_digest = plane.digest();
  const std::size_t k = cycle.points.size();

  Check length{"length", k >= 3 && cycle.lines.size() == k, "", {}};
  if (!length.pass) {
    length.detail = std::to_string(k) + " points, " + std::to_string(cycle.lines.size()) + " lines";
  }
  report.checks.push_back(length);

  Check range{"ids-in-range", true, "", {}};
  for (PointId p : cycle.points) {
    if (p < 0 || p >= plane.num_points()) {
      range.pass = false;
      range.witness.push_back(p);
    }
  }
  for (LineId l : cycle.lines) {
    if (l < 0 || l >= plane.num_lines()) {
      range.pass = false;
      range.witness.push_back(l);
    }
  }
  if (!range.pass) range.detail = "unknown point or line ids";
  report.checks.push_back(range);

  auto duplicates = [](std::vector<std::int32_t> ids) {
    std::sort(ids.begin(), ids.end());
    std::vector<std::int32_t> dup;
    for (std::size_t i = 1; i < ids.size(); ++i) {
      if (ids[i] == ids[i - 1] && (dup.empty() || dup.back() != ids[i])) dup.push_back(ids[i]);
    }
    return dup;
  };
  Check distinct_points{"distinct-points", true, "", duplicates(cycle.points)};
  distinct_points.pass = distinct_points.witness.empty();
  if (!distinct_points.pass) distinct_points.detail = "repeated point ids";
  report.checks.push_back(distinct_points);

  Check distinct_lines{"distinct-lines", true, "", duplicates(cycle.lines)};
  distinct_lines.pass = distinct_lines.witness.empty();
  if (!distinct_lines.pass) distinct_lines.detail = "repeated line ids";
  report.checks.push_back(distinct_lines);

  // Witnesses below are positions i in the sequence, not ids.
  Check incidence{"incidence", true, "", {}};
  Check joins{"line-is-join", true, "", {}};
  if (range.pass && k >= 1 && cycle.lines.size() == k) {
    for (std::size_t i = 0; i < k; ++i) {
      const PointId a = cycle.points[i];
      const PointId b = cycle.points[(i + 1) % k];
      const LineId l = cycle.lines[i];
      if (!plane.incident(a, l) || !plane.incident(b, l)) {
        incidence.pass = false;
        incidence.witness.push_back(static_cast<std::int32_t>(i));
        continue;
      }
      if (a != b && plane.line_through(a, b) != l) {
        joins.pass = false;
        joins.witness.push_back(static_cast<std::int32_t>(i));
      }
    }
  } else {
    incidence.pass = false;
    joins.pass = false;
  }
  if (!incidence.pass) incidence.detail = "line i misses point i or point i+1";
  if (!joins.pass) joins.detail = "line i is not the join of its endpoints";
  report.checks.push_back(incidence);
  report.checks.push_back(joins);

  report.ok = std::all_of(report.checks.begin(), report.checks.end(), [](const Check& c) { return c.pass; });
  return report;
}

// ---------------------------------------------------------------------------
// Search

namespace {

class GonSearch {
 public:
  GonSearch(const Plane& plane, int k, std::uint64_t budget)
      : plane_(plane),
        k_(k),
        budget_(budget),
        point_used_(static_cast<std::size_t>(plane.num_points()), false),
        line_used_(static_cast<std::size_t>(plane.num_lines()), false) {}

  // Returns false once the budget is exhausted.
  bool find_from(PointId start) {
    start_ = start;
    path_.assign(1, start);
    lines_.clear();
    point_used_[static_cast<std::size_t>(start)] = true;
    const bool ok = extend();
    point_used_[static_cast<std::size_t>(start)] = false;
    return ok;
  }

  void count_from(PointId start) {
    counting_ = true;
    find_from(start);
  }

  std::uint64_t nodes = 0;
  std::uint64_t count = 0;
  std::optional<EmbeddedCycle> found;

 private:
  bool extend() {
    const PointId last = path_.back();
    if (static_cast<int>(path_.size()) == k_) {
      const LineId closing = plane_.line_through(last, start_);
      if (closing == kNone || line_used_[static_cast<std::size_t>(closing)]) return true;
      if (counting_) {
        if (path_[1] < path_.back()) ++count;
        return true;
      }
      found = EmbeddedCycle{path_, lines_};
      found->lines.push_back(closing);
      return true;
    }
    for (PointId r = start_ + 1; r < plane_.num_points(); ++r) {
      if (point_used_[static_cast<std::size_t>(r)]) continue;
      const LineId via = plane_.line_through(last, r);
      if (via == kNone || line_used_[static_cast<std::size_t>(via)]) continue;
      if (++nodes > budget_) return false;
      point_used_[static_cast<std::size_t>(r)] = true;
      line_used_[static_cast<std::size_t>(via)] = true;
      path_.push_back(r);
      lines_.push_back(via);
      const bool ok = extend();
      path_.pop_back();
      lines_.pop_back();
      point_used_[static_cast<std::size_t>(r)] = false;
      line_used_[static_cast<std::size_t>(via)] = false;
      if (!ok) return false;
      if (found && !counting_) return true;
    }
    return true;
  }

  const Plane& plane_;
  int k_;
  std::uint64_t budget_;
  bool counting_ = false;
  PointId start_ = 0;
  std::vector<PointId> path_;
  std::vector<LineId> lines_;
  std::vector<bool> point_used_;
  std::vector<bool> line_used_;
};

}  // namespace

SearchResult brute_force_cycle(const Plane& plane, int k, std::uint64_t budget) {
  SearchResult result;
  if (k < 3 || k > plane.num_points() || k > plane.num_lines()) return result;
  GonSearch search(plane, k, budget);
  for (PointId start = 0; start + k <= plane.num_points(); ++start) {
    if (!search.find_from(start)) {
      result.status = SearchStatus::budget_exhausted;
      result.nodes = search.nodes;
      return result;
    }
    if (search.found) break;
  }
  result.nodes = search.nodes;
  if (search.found) {
    result.status = SearchStatus::found;
    result.cycle = std::move(search.found);
  }
  return result;
}

std::uint64_t count_cycles_exhaustive(const Plane& plane, int k) {
  if (plane.num_points() > kExhaustiveMaxPoints) {
    throw VerifyError("exhaustive counting is limited to " + std::to_string(kExhaustiveMaxPoints) +
                      " points");
  }
  if (k < 3 || k > plane.num_points()) return 0;
  GonSearch search(plane, k, UINT64_MAX);
  for (PointId start = 0; start + k <= plane.num_points(); ++start) search.count_from(start);
  return search.count;
}

// ---------------------------------------------------------------------------
// Certification

CertificationReport certify_plane(const Plane& plane) {
  CertificationReport report;
  report.kind = plane.kind();
  report.plane_digest = plane.digest();

  const auto violations = find_axiom_violations(plane, 64);
  if (violations.empty()) {
    report.checks.push_back({"axioms", true, std::string(to_string(plane.kind())) + " axioms hold", {}});
  }
  for (const auto& v : violations) {
    std::vector<std::int32_t> witness = v.witness_points();
    witness.insert(witness.end(), v.witness_lines().begin(), v.witness_lines().end());
    report.checks.push_back({v.axiom(), false, v.what(), witness});
  }

  if (auto four = find_four_cycle(plane)) {
    report.checks.push_back({"no-four-cycle", false,
                             "points p" + std::to_string(four->p) + ", p" + std::to_string(four->r) +
                                 " share lines L" + std::to_string(four->l) + ", L" +
                                 std::to_string(four->m),
                             {four->p, four->r, four->l, four->m}});
  } else {
    report.checks.push_back({"no-four-cycle", true, "", {}});
  }

  const int q = plane.order();
  if (plane.kind() == PlaneKind::affine) {
    const auto& classes = plane.parallel_classes();
    const bool shape = classes.size() == static_cast<std::size_t>(q) + 1 &&
                       std::all_of(classes.begin(), classes.end(),
                                   [&](const auto& c) { return c.size() == static_cast<std::size_t>(q); });
    report.checks.push_back({"parallel-classes", shape,
                             std::to_string(classes.size()) + " classes" +
                                 (classes.empty() ? "" : " of " + std::to_string(classes.front().size()) + " lines"),
                             {}});
  }

  if (plane.kind() == PlaneKind::projective) {
    const GraphStats stats = graph_stats(levi_graph(plane));
    report.levi = stats;
    report.checks.push_back({"levi-regular", stats.regular && stats.degree == q + 1,
                             "degree " + std::to_string(stats.degree) + ", expected " + std::to_string(q + 1),
                             {}});
    report.checks.push_back({"levi-girth", stats.girth == 6, "girth " + std::to_string(stats.girth), {}});
    report.checks.push_back(
        {"levi-diameter", stats.diameter == 3, "diameter " + std::to_string(stats.diameter), {}});
  }

  report.ok = std::all_of(report.checks.begin(), report.checks.end(), [](const Check& c) { return c.pass; });
  return report;
}

// ---------------------------------------------------------------------------
// JSON

std::string_view to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::found: return "found";
    case SearchStatus::absent: return "absent";
    case SearchStatus::budget_exhausted: return "budget-exhausted";
  }
  return "absent";
}

nlohmann::json to_json(const Check& check) {
  nlohmann::json j{{"name", check.name}, {"pass", check.pass}};
  if (!check.detail.empty()) j["detail"] = check.detail;
  if (!check.witness.empty()) j["witness"] = check.witness;
  return j;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  return {{"ok", report.ok}, {"k", report.k}, {"checks", checks}, {"plane_digest", report.plane_digest}};
}

nlohmann::json to_json(const CertificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  nlohmann::json j{{"ok", report.ok},
                   {"kind", std::string(to_string(report.kind))},
                   {"checks", checks},
                   {"plane_digest", report.plane_digest}};
  if (report.levi) {
    j["levi"] = {{"regular", report.levi->regular},
                 {"degree", report.levi->degree},
                 {"girth", report.levi->girth},
                 {"diameter", report.levi->diameter}};
  }
  return j;
}

nlohmann::json to_json(const SearchResult& result) {
  nlohmann::json j{{"status", std::string(to_string(result.status))}, {"nodes", result.nodes}};
  if (result.cycle) {
    j["k"] = result.cycle->k();
    j["cycle_points"] = result.cycle->points;
    j["cycle_lines"] = result.cycle->lines;
  }
  return j;
}

}  // namespace planecycles
