#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planecycles/plane.hpp"

namespace planecycles {

/// Point-line incidence graph. Vertices 0..P-1 are points, P..P+L-1 lines.
struct LeviGraph {
  int num_points = 0;
  int num_lines = 0;
  std::vector<std::vector<int>> adjacency;

  int num_vertices() const noexcept { return num_points + num_lines; }
  bool is_point(int v) const noexcept { return v < num_points; }
  int line_vertex(LineId l) const noexcept { return num_points + l; }
};

LeviGraph levi_graph(const Plane& plane);

struct GraphStats {
  bool regular = false;
  /// Common degree when regular, otherwise -1.
  int degree = -1;
  int min_point_degree = 0, max_point_degree = 0;
  int min_line_degree = 0, max_line_degree = 0;
  /// Length of a shortest cycle, -1 for a forest.
  int girth = -1;
  /// Largest distance, -1 when disconnected.
  int diameter = -1;
};

/// Exact girth and diameter by a BFS from every vertex.
GraphStats graph_stats(const LeviGraph& graph);

/// A 4-cycle (two points on two common lines) as {p, r, l, m}, if any.
struct FourCycle {
  PointId p, r;
  LineId l, m;
};
std::optional<FourCycle> find_four_cycle(const Plane& plane);

/// Graphviz export: point vertices `p<id>`, line vertices `L<id>`.
std::string levi_dot(const Plane& plane);

}  // namespace planecycles
