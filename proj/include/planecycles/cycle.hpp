#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "planecycles/plane.hpp"

namespace planecycles {

enum class EmbedErrorCode {
  OutOfRange,
  ConstructionFailed,
  WrongKind,
  InvalidPoint,
  InvalidLine,
  StartOnOrigin,
  NotOnCycle,
  TooLong,
  BadSkipIndex,
  AnchorFailure,
};

class EmbedError : public std::runtime_error {
 public:
  EmbedError(EmbedErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  EmbedErrorCode code() const noexcept { return code_; }

 private:
  EmbedErrorCode code_;
};

/// k points and k lines; lines[i] joins points[i] and points[(i+1) % k].
struct EmbeddedCycle {
  std::vector<PointId> points;
  std::vector<LineId> lines;

  int k() const noexcept { return static_cast<int>(points.size()); }
  friend bool operator==(const EmbeddedCycle&, const EmbeddedCycle&) = default;
};

/// Open alternating sequence; lines[i] joins points[i] and points[i+1].
struct Path {
  std::vector<PointId> points;
  std::vector<LineId> lines;

  static Path single(PointId p) { return Path{{p}, {}}; }

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  PointId front() const { return points.front(); }
  PointId back() const { return points.back(); }

  void append(LineId via, PointId p) {
    lines.push_back(via);
    points.push_back(p);
  }
  /// this -via-> other.
  void extend(LineId via, const Path& other);
  Path reversed() const;
  /// Joins back() to front() with `via`.
  EmbeddedCycle close(LineId via) const;
};

/// A set of point-vertices of degree <= 2 joined by labelled edges.
///
/// Constructions are written as explicit edit scripts against this structure
/// (add a path, unlink an edge, link two points through a line, drop a vertex)
/// and traced back into an alternating sequence at the end.
class LinkGraph {
 public:
  void add_path(const Path& path);
  void add_point(PointId p);
  void link(PointId a, PointId b, LineId via);
  void unlink(PointId a, PointId b);
  /// Removes a vertex together with its edges.
  void drop(PointId p);

  bool contains(PointId p) const { return adjacency_.count(p) != 0; }
  std::optional<LineId> line_between(PointId a, PointId b) const;
  int degree(PointId p) const;
  std::size_t size() const noexcept { return adjacency_.size(); }

  std::set<PointId> used_points() const;
  std::set<LineId> used_lines() const;

  /// Requires a single cycle through every vertex. Starts at `start` (default:
  /// least id) and leaves towards the smaller-id neighbour.
  EmbeddedCycle trace_cycle(std::optional<PointId> start = std::nullopt) const;
  /// Requires a single path through every vertex, starting at endpoint `start`.
  Path trace_path(PointId start) const;

 private:
  std::map<PointId, std::vector<std::pair<PointId, LineId>>> adjacency_;
};

}  // namespace planecycles
