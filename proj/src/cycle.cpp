#include "planecycles/cycle.hpp"

#include <algorithm>

namespace planecycles {
namespace {

[[noreturn]] void edit_failure(const std::string& what) {
  throw EmbedError(EmbedErrorCode::ConstructionFailed, what);
}

}  // namespace

void Path::extend(LineId via, const Path& other) {
  if (other.empty()) return;
  if (empty()) {
    *this = other;
    return;
  }
  lines.push_back(via);
  lines.insert(lines.end(), other.lines.begin(), other.lines.end());
  points.insert(points.end(), other.points.begin(), other.points.end());
}

Path Path::reversed() const {
  Path out{std::vector<PointId>(points.rbegin(), points.rend()),
           std::vector<LineId>(lines.rbegin(), lines.rend())};
  return out;
}

EmbeddedCycle Path::close(LineId via) const {
  EmbeddedCycle c{points, lines};
  c.lines.push_back(via);
  return c;
}

void LinkGraph::add_point(PointId p) {
  if (contains(p)) edit_failure("point " + std::to_string(p) + " already present");
  adjacency_[p];
}

void LinkGraph::add_path(const Path& path) {
  if (path.empty()) return;
  add_point(path.points.front());
  for (std::size_t i = 0; i < path.lines.size(); ++i) {
    add_point(path.points[i + 1]);
    link(path.points[i], path.points[i + 1], path.lines[i]);
  }
}

void LinkGraph::link(PointId a, PointId b, LineId via) {
  if (a == b) edit_failure("self link at " + std::to_string(a));
  auto& na = adjacency_[a];
  auto& nb = adjacency_[b];
  if (na.size() >= 2 || nb.size() >= 2) {
    edit_failure("link " + std::to_string(a) + "-" + std::to_string(b) + " exceeds degree 2");
  }
  if (line_between(a, b)) edit_failure("points " + std::to_string(a) + "," + std::to_string(b) + " already linked");
  na.emplace_back(b, via);
  nb.emplace_back(a, via);
}

void LinkGraph::unlink(PointId a, PointId b) {
  auto erase = [&](PointId from, PointId to) {
    auto it = adjacency_.find(from);
    if (it == adjacency_.end()) return false;
    auto& adj = it->second;
    auto pos = std::find_if(adj.begin(), adj.end(), [&](const auto& e) { return e.first == to; });
    if (pos == adj.end()) return false;
    adj.erase(pos);
    return true;
  };
  if (!erase(a, b) || !erase(b, a)) {
    edit_failure("no edge " + std::to_string(a) + "-" + std::to_string(b) + " to remove");
  }
}

void LinkGraph::drop(PointId p) {
  auto it = adjacency_.find(p);
  if (it == adjacency_.end()) edit_failure("point " + std::to_string(p) + " not present");
  const auto neighbours = it->second;
  for (const auto& [r, via] : neighbours) unlink(p, r);
  adjacency_.erase(p);
}

std::optional<LineId> LinkGraph::line_between(PointId a, PointId b) const {
  auto it = adjacency_.find(a);
  if (it == adjacency_.end()) return std::nullopt;
  for (const auto& [r, via] : it->second) {
    if (r == b) return via;
  }
  return std::nullopt;
}

int LinkGraph::degree(PointId p) const {
  auto it = adjacency_.find(p);
  return it == adjacency_.end() ? 0 : static_cast<int>(it->second.size());
}

std::set<PointId> LinkGraph::used_points() const {
  std::set<PointId> out;
  for (const auto& [p, adj] : adjacency_) out.insert(p);
  return out;
}

std::set<LineId> LinkGraph::used_lines() const {
  std::set<LineId> out;
  for (const auto& [p, adj] : adjacency_) {
    for (const auto& [r, via] : adj) out.insert(via);
  }
  return out;
}

EmbeddedCycle LinkGraph::trace_cycle(std::optional<PointId> start) const {
  if (adjacency_.size() < 3) edit_failure("cycle needs at least 3 points");
  for (const auto& [p, adj] : adjacency_) {
    if (adj.size() != 2) edit_failure("point " + std::to_string(p) + " has degree " + std::to_string(adj.size()));
  }
  const PointId first = start.value_or(adjacency_.begin()->first);
  if (!contains(first)) edit_failure("start point not present");
  const auto& first_adj = adjacency_.at(first);
  auto step = std::min(first_adj[0], first_adj[1]);

  EmbeddedCycle c;
  PointId prev = first;
  c.points.push_back(first);
  c.lines.push_back(step.second);
  PointId cur = step.first;
  while (cur != first) {
    if (c.points.size() > adjacency_.size()) edit_failure("trace did not return to start");
    c.points.push_back(cur);
    const auto& adj = adjacency_.at(cur);
    const auto& next = adj[0].first == prev ? adj[1] : adj[0];
    c.lines.push_back(next.second);
    prev = cur;
    cur = next.first;
  }
  if (c.points.size() != adjacency_.size()) {
    edit_failure("edits left " + std::to_string(adjacency_.size() - c.points.size()) +
                 " points outside the cycle");
  }
  return c;
}

Path LinkGraph::trace_path(PointId start) const {
  if (degree(start) != 1 && !(adjacency_.size() == 1 && contains(start))) {
    edit_failure("path start " + std::to_string(start) + " is not an endpoint");
  }
  Path path = Path::single(start);
  PointId prev = kNone;
  PointId cur = start;
  while (true) {
    const auto& adj = adjacency_.at(cur);
    const std::pair<PointId, LineId>* next = nullptr;
    for (const auto& e : adj) {
      if (e.first != prev) next = &e;
    }
    if (next == nullptr) break;
    if (path.size() > adjacency_.size()) edit_failure("path trace looped");
    path.append(next->second, next->first);
    prev = cur;
    cur = next->first;
    if (degree(cur) > 2) edit_failure("branching at " + std::to_string(cur));
  }
  if (path.size() != adjacency_.size()) edit_failure("edits left the path disconnected");
  return path;
}

}  // namespace planecycles
