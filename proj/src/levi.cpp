#include "planecycles/levi.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace planecycles {

LeviGraph levi_graph(const Plane& plane) {
  LeviGraph g;
  g.num_points = plane.num_points();
  g.num_lines = plane.num_lines();
  g.adjacency.resize(static_cast<std::size_t>(g.num_vertices()));
  for (LineId l = 0; l < plane.num_lines(); ++l) {
    const int lv = g.line_vertex(l);
    for (PointId p : plane.points_on(l)) {
      g.adjacency[static_cast<std::size_t>(p)].push_back(lv);
      g.adjacency[static_cast<std::size_t>(lv)].push_back(p);
    }
  }
  return g;
}

GraphStats graph_stats(const LeviGraph& graph) {
  GraphStats s;
  const int n = graph.num_vertices();
  if (n == 0) return s;

  auto degree = [&](int v) { return static_cast<int>(graph.adjacency[static_cast<std::size_t>(v)].size()); };
  s.min_point_degree = s.min_line_degree = std::numeric_limits<int>::max();
  for (int v = 0; v < n; ++v) {
    const int d = degree(v);
    if (graph.is_point(v)) {
      s.min_point_degree = std::min(s.min_point_degree, d);
      s.max_point_degree = std::max(s.max_point_degree, d);
    } else {
      s.min_line_degree = std::min(s.min_line_degree, d);
      s.max_line_degree = std::max(s.max_line_degree, d);
    }
  }
  if (graph.num_points == 0) s.min_point_degree = 0;
  if (graph.num_lines == 0) s.min_line_degree = 0;
  const int d0 = degree(0);
  s.regular = std::all_of(graph.adjacency.begin(), graph.adjacency.end(),
                          [&](const auto& adj) { return static_cast<int>(adj.size()) == d0; });
  s.degree = s.regular ? d0 : -1;

  int girth = std::numeric_limits<int>::max();
  int diameter = 0;
  bool connected = true;
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::deque<int> queue;
  for (int root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(root)] = 0;
    parent[static_cast<std::size_t>(root)] = -1;
    queue.assign(1, root);
    int reached = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      const int du = dist[static_cast<std::size_t>(u)];
      for (int v : graph.adjacency[static_cast<std::size_t>(u)]) {
        auto& dv = dist[static_cast<std::size_t>(v)];
        if (dv < 0) {
          dv = du + 1;
          parent[static_cast<std::size_t>(v)] = u;
          diameter = std::max(diameter, dv);
          ++reached;
          queue.push_back(v);
        } else if (v != parent[static_cast<std::size_t>(u)]) {
          girth = std::min(girth, du + dv + 1);
        }
      }
    }
    if (reached != n) connected = false;
  }
  s.girth = girth == std::numeric_limits<int>::max() ? -1 : girth;
  s.diameter = connected ? diameter : -1;
  return s;
}

std::optional<FourCycle> find_four_cycle(const Plane& plane) {
  std::vector<LineId> seen_on(static_cast<std::size_t>(plane.num_points()), kNone);
  std::vector<PointId> seen_by(static_cast<std::size_t>(plane.num_points()), kNone);
  for (PointId p = 0; p < plane.num_points(); ++p) {
    for (LineId l : plane.lines_through(p)) {
      for (PointId r : plane.points_on(l)) {
        if (r == p) continue;
        auto idx = static_cast<std::size_t>(r);
        if (seen_by[idx] == p) return FourCycle{p, r, seen_on[idx], l};
        seen_by[idx] = p;
        seen_on[idx] = l;
      }
    }
  }
  return std::nullopt;
}

std::string levi_dot(const Plane& plane) {
  std::ostringstream os;
  os << "graph levi {\n";
  const auto& labels = plane.point_labels();
  for (PointId p = 0; p < plane.num_points(); ++p) {
    os << "  p" << p;
    if (!labels.empty()) os << " [label=\"" << labels[static_cast<std::size_t>(p)] << "\"]";
    os << ";\n";
  }
  for (LineId l = 0; l < plane.num_lines(); ++l) os << "  L" << l << " [shape=box];\n";
  for (LineId l = 0; l < plane.num_lines(); ++l) {
    for (PointId p : plane.points_on(l)) os << "  p" << p << " -- L" << l << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace planecycles
