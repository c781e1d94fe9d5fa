#include "planecycles/affine_embedder.hpp"

#include <algorithm>

namespace planecycles {
namespace {

[[noreturn]] void fail(EmbedErrorCode code, const std::string& what) { throw EmbedError(code, what); }

}  // namespace

// ---------------------------------------------------------------------------
// Frame

int Frame::level_of(const Plane& plane, PointId p) const {
  const LineId l = plane.line_through(origin, p);
  for (std::size_t j = 0; j < pencil.size(); ++j) {
    if (pencil[j] == l) return static_cast<int>(j);
  }
  fail(EmbedErrorCode::InvalidPoint, "point " + std::to_string(p) + " has no pencil level");
}

Frame choose_frame(const Plane& plane, std::optional<PointId> origin) {
  const PointId o = origin.value_or(0);
  if (plane.kind() != PlaneKind::affine) fail(EmbedErrorCode::WrongKind, "frame needs an affine plane");
  if (o < 0 || o >= plane.num_points()) fail(EmbedErrorCode::InvalidPoint, "no point " + std::to_string(o));
  const auto through = plane.lines_through(o);
  std::vector<LineId> pencil(through.begin(), through.end());
  std::sort(pencil.begin(), pencil.end());
  return choose_frame(plane, o, std::move(pencil));
}

Frame choose_frame(const Plane& plane, PointId origin, std::vector<LineId> pencil) {
  if (plane.kind() != PlaneKind::affine) fail(EmbedErrorCode::WrongKind, "frame needs an affine plane");
  if (origin < 0 || origin >= plane.num_points()) {
    fail(EmbedErrorCode::InvalidPoint, "no point " + std::to_string(origin));
  }
  const int q = plane.order();
  auto through = plane.lines_through(origin);
  std::vector<LineId> expected(through.begin(), through.end());
  std::vector<LineId> given = pencil;
  std::sort(expected.begin(), expected.end());
  std::sort(given.begin(), given.end());
  if (given != expected || static_cast<int>(pencil.size()) != q + 1) {
    fail(EmbedErrorCode::InvalidLine, "pencil must list the q+1 lines through O");
  }
  Frame f;
  f.q = q;
  f.origin = origin;
  f.pencil = std::move(pencil);
  for (LineId l : f.pencil) f.pencil_class.push_back(plane.class_of(l));
  return f;
}

// ---------------------------------------------------------------------------
// Base paths and the cycle partition

Path base_path(const Plane& plane, const Frame& frame, PointId start) {
  if (start == frame.origin) fail(EmbedErrorCode::StartOnOrigin, "base path cannot start at O");
  if (!plane.incident(start, frame.line(0))) {
    fail(EmbedErrorCode::InvalidPoint, "base path start " + std::to_string(start) + " is not on l_0");
  }
  Path path = Path::single(start);
  for (int i = 1; i <= frame.q; ++i) {
    const LineId via = plane.parallel_through_class(frame.line_class(i + 1), path.back());
    const auto next = plane.meet(via, frame.line(i));
    if (!next || *next == frame.origin) {
      fail(EmbedErrorCode::ConstructionFailed, "base path step " + std::to_string(i) + " left the plane");
    }
    path.append(via, *next);
  }
  return path;
}

std::optional<std::size_t> StructuredCycle::position_of(PointId p) const {
  auto it = std::find(points.begin(), points.end(), p);
  if (it == points.end()) return std::nullopt;
  return static_cast<std::size_t>(it - points.begin());
}

std::vector<std::size_t> StructuredCycle::positions_on_level(int level, int q) const {
  std::vector<std::size_t> out;
  const auto step = static_cast<std::size_t>(q + 1);
  for (std::size_t pos = static_cast<std::size_t>(level); pos < points.size(); pos += step) out.push_back(pos);
  return out;
}

CyclePartition cycle_partition(const Plane& plane, const Frame& frame, std::mt19937_64* rng) {
  const int q = frame.q;
  std::vector<PointId> starts;
  for (PointId p : plane.points_on(frame.line(0))) {
    if (p != frame.origin) starts.push_back(p);
  }
  std::vector<bool> used(static_cast<std::size_t>(plane.num_points()), false);

  std::vector<StructuredCycle> cycles;
  for (PointId first : starts) {
    if (used[static_cast<std::size_t>(first)]) continue;
    StructuredCycle c;
    PointId cur = first;
    while (true) {
      if (used[static_cast<std::size_t>(cur)]) {
        fail(EmbedErrorCode::ConstructionFailed, "base path chain re-entered point " + std::to_string(cur));
      }
      Path piece = base_path(plane, frame, cur);
      for (std::size_t j = 0; j < piece.size(); ++j) {
        used[static_cast<std::size_t>(piece.points[j])] = true;
        c.points.push_back(piece.points[j]);
        if (j < piece.lines.size()) c.lines.push_back(piece.lines[j]);
      }
      const LineId closing = plane.parallel_through_class(frame.line_class(1), piece.back());
      const auto next = plane.meet(closing, frame.line(0));
      if (!next || *next == frame.origin) {
        fail(EmbedErrorCode::ConstructionFailed, "closing line missed l_0 \\ {O}");
      }
      c.lines.push_back(closing);
      if (*next == first) break;
      cur = *next;
    }
    c.t = static_cast<int>(c.points.size()) / (q + 1);
    cycles.push_back(std::move(c));
  }
  std::stable_sort(cycles.begin(), cycles.end(),
                   [](const StructuredCycle& a, const StructuredCycle& b) { return a.size() < b.size(); });

  CyclePartition part;
  part.frame = frame;
  part.lambda.push_back(0);
  for (std::size_t idx = 0; idx < cycles.size(); ++idx) {
    auto& c = cycles[idx];
    c.index = static_cast<int>(idx) + 1;
    part.lambda.push_back(part.lambda.back() + c.t);
    const auto candidates = c.positions_on_level(c.index - 1, q);
    if (candidates.empty()) fail(EmbedErrorCode::ConstructionFailed, "cycle misses its entry level");
    std::size_t chosen = candidates.front();
    if (rng != nullptr) {
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      chosen = candidates[pick(*rng)];
    } else {
      for (std::size_t pos : candidates) {
        if (c.points[pos] < c.points[chosen]) chosen = pos;
      }
    }
    c.entry_prev = chosen;
    c.entry_next = c.wrap(static_cast<std::ptrdiff_t>(chosen) + 1);
  }
  part.cycles = std::move(cycles);
  return part;
}

Path directed_subpath(const StructuredCycle& cycle, PointId start, Direction direction, std::size_t v) {
  const auto pos = cycle.position_of(start);
  if (!pos) fail(EmbedErrorCode::NotOnCycle, "point " + std::to_string(start) + " is not on the cycle");
  if (v == 0 || v > cycle.size()) {
    fail(EmbedErrorCode::TooLong, "subpath of " + std::to_string(v) + " vertices on a cycle of " +
                                      std::to_string(cycle.size()));
  }
  const auto p0 = static_cast<std::ptrdiff_t>(*pos);
  Path path = Path::single(start);
  for (std::ptrdiff_t j = 1; j < static_cast<std::ptrdiff_t>(v); ++j) {
    if (direction == Direction::positive) {
      path.append(cycle.line_after(p0 + j - 1), cycle.at(p0 + j));
    } else {
      path.append(cycle.line_after(p0 - j), cycle.at(p0 - j));
    }
  }
  return path;
}

// ---------------------------------------------------------------------------
// Spine

Spine build_spine(const CyclePartition& partition, int m, std::optional<int> skip_t, bool cut_first) {
  if (m < 1 || m > partition.s()) {
    fail(EmbedErrorCode::OutOfRange, "spine index " + std::to_string(m) + " outside 1.." + std::to_string(partition.s()));
  }
  if (skip_t && (*skip_t < 2 || *skip_t > m - 1)) {
    fail(EmbedErrorCode::BadSkipIndex, "skip index " + std::to_string(*skip_t) + " outside 2.." + std::to_string(m - 1));
  }
  const Frame& frame = partition.frame;
  Spine spine;
  spine.m = m;
  spine.skip_t = skip_t;
  spine.cut_first = cut_first;

  for (int i = 1; i <= m; ++i) {
    const StructuredCycle& c = partition.cycle(i);
    Path segment;
    LineId junction = frame.line(i - 1);  // joins C_{i-1} to C_i
    if (!skip_t || i < *skip_t) {
      // P_{i,i-1} all the way round to P_{i,i}.
      segment = directed_subpath(c, partition.entry_prev(i), Direction::negative, c.size());
    } else if (i == *skip_t) {
      // Same walk without its last vertex P_{i,i}; ends on l_{i+1}.
      segment = directed_subpath(c, partition.entry_prev(i), Direction::negative, c.size() - 1);
    } else {
      // Entered on l_i at P_{i,i}, left on l_{i+1} from its positive neighbour.
      segment = directed_subpath(c, partition.entry_next(i), Direction::negative, c.size());
      junction = frame.line(i);
    }
    spine.path.extend(junction, segment);
  }
  spine.second_vertex = spine.path.points.size() > 1 ? spine.path.points[1] : kNone;
  if (cut_first) {
    spine.path.points.erase(spine.path.points.begin());
    spine.path.lines.erase(spine.path.lines.begin());
  }
  return spine;
}

// ---------------------------------------------------------------------------
// Embedder

AffineEmbedder::AffineEmbedder(const Plane& plane, EmbedOptions options)
    : plane_(plane), options_(options) {
  if (plane.kind() != PlaneKind::affine) fail(EmbedErrorCode::WrongKind, "affine embedder needs an affine plane");
  if (options_.seed) {
    std::mt19937_64 rng(*options_.seed);
    std::uniform_int_distribution<PointId> pick(0, plane.num_points() - 1);
    const PointId origin = pick(rng);
    auto through = plane.lines_through(origin);
    std::vector<LineId> pencil(through.begin(), through.end());
    std::shuffle(pencil.begin(), pencil.end(), rng);
    partition_ = cycle_partition(plane, choose_frame(plane, origin, std::move(pencil)), &rng);
  } else {
    partition_ = cycle_partition(plane, choose_frame(plane));
  }
}

AffineEmbedder::AffineEmbedder(const Plane& plane, CyclePartition partition, EmbedOptions options)
    : plane_(plane), options_(options), partition_(std::move(partition)) {
  if (plane.kind() != PlaneKind::affine) fail(EmbedErrorCode::WrongKind, "affine embedder needs an affine plane");
}

bool AffineEmbedder::accept(const std::optional<EmbeddedCycle>& c) const {
  return c && verify_embedding(plane_, *c).ok;
}

Embedding AffineEmbedder::embed(int k) const {
  const int q = partition_.q();
  if (k < 3 || k > q * q) {
    fail(EmbedErrorCode::OutOfRange, "k=" + std::to_string(k) + " outside 3.." + std::to_string(q * q));
  }
  std::string branch;
  std::optional<EmbeddedCycle> cycle;
  if (options_.search_small_orders && q <= 3) {
    branch = "search";
    auto found = brute_force_cycle(plane_, k, options_.search_budget);
    cycle = found.cycle;
  } else if (k <= partition_.cycle(1).t * (q + 1)) {
    cycle = short_cycle(k, branch);
  } else {
    cycle = spine_cycle(k, branch);
  }
  if (!cycle) {
    fail(EmbedErrorCode::ConstructionFailed, "no cycle for k=" + std::to_string(k) + " (branch " + branch + ")");
  }
  Embedding out{std::move(*cycle), branch, {}};
  out.report = verify_embedding(plane_, out.cycle);
  if (!out.report.ok || out.cycle.k() != k) {
    fail(EmbedErrorCode::ConstructionFailed,
         "branch " + branch + " produced an invalid cycle for k=" + std::to_string(k));
  }
  return out;
}

std::optional<EmbeddedCycle> AffineEmbedder::short_cycle(int k, std::string& branch) const {
  const Frame& frame = partition_.frame;
  const int q = frame.q;
  const StructuredCycle& c1 = partition_.cycle(1);
  const PointId start = partition_.entry_prev(1);
  const auto n = static_cast<int>(c1.size());

  if (k == n) {
    branch = "c1-whole";
    return EmbeddedCycle{c1.points, c1.lines};
  }
  const int residue = k % (q + 1);
  if (residue == 1) {
    // Positive k-path returns to l_0; l_0 closes it.
    branch = "c1-arc-on-l0";
    return directed_subpath(c1, start, Direction::positive, static_cast<std::size_t>(k)).close(frame.line(0));
  }
  if (residue == 2) {
    // O, a positive arc ending on l_{q-1}, then the C_1 edge l_{q-1} -> l_q
    // that precedes P_{1,0}, back to O on l_q.
    branch = "c1-arc-pair-through-o";
    const Path arc = directed_subpath(c1, start, Direction::positive, static_cast<std::size_t>(k - 3));
    const auto p0 = static_cast<std::ptrdiff_t>(*c1.position_of(start));
    Path cycle = Path::single(frame.origin);
    cycle.extend(frame.line(0), arc);
    cycle.append(frame.line(q - 1), c1.at(p0 - 2));
    cycle.append(c1.line_after(p0 - 2), c1.at(p0 - 1));
    return cycle.close(frame.line(q));
  }
  branch = "c1-arc-through-o";
  const Path arc = directed_subpath(c1, start, Direction::positive, static_cast<std::size_t>(k - 1));
  Path cycle = Path::single(frame.origin);
  cycle.extend(frame.line(0), arc);
  return cycle.close(frame.line(k - 2));
}

std::optional<EmbeddedCycle> AffineEmbedder::attach(int m, bool cut, Direction dir, std::size_t v) const {
  const Frame& frame = partition_.frame;
  const int q = frame.q;
  const StructuredCycle& next = partition_.cycle(m + 1);
  if (v == 0 || v >= next.size()) return std::nullopt;
  const Path tail = directed_subpath(next, partition_.entry_prev(m + 1), dir, v);
  const int end_level = frame.level_of(plane_, tail.back());
  // Lines l_1..l_m are junctions; l_0 (or l_q when cut) closes at the front.
  const bool free_level = cut ? (end_level == 0 || (end_level > m && end_level < q))
                              : (end_level > m && end_level <= q);
  if (!free_level) return std::nullopt;
  Path cycle = build_spine(partition_, m, std::nullopt, cut).path;
  cycle.extend(frame.line(m), tail);
  cycle.append(frame.line(end_level), frame.origin);
  return cycle.close(frame.line(cut ? q : 0));
}

std::optional<EmbeddedCycle> AffineEmbedder::rerouted(int m, int r) const {
  const Frame& frame = partition_.frame;
  if (m < 3) return std::nullopt;
  const StructuredCycle& next = partition_.cycle(m + 1);
  if (r < 1 || static_cast<std::size_t>(r) >= next.size()) return std::nullopt;
  // Shifted start P_{m+1,m+1}, r vertices, ends on l_t.
  const int t = frame.wrap(m + r);
  if (t < 2 || t > m - 1) return std::nullopt;
  const Path tail = directed_subpath(next, partition_.entry_next(m + 1), Direction::positive, static_cast<std::size_t>(r));
  Path cycle = build_spine(partition_, m, t, false).path;
  cycle.extend(frame.line(m + 1), tail);
  cycle.append(frame.line(t), frame.origin);
  return cycle.close(frame.line(0));
}

std::optional<EmbeddedCycle> AffineEmbedder::spine_cycle(int k, std::string& branch) const {
  const Frame& frame = partition_.frame;
  const int q = frame.q;
  const int s = partition_.s();
  int m = 1;
  while (m < s && partition_.lambda[static_cast<std::size_t>(m + 1)] * (q + 1) <= k) ++m;
  const int r = k - partition_.lambda[static_cast<std::size_t>(m)] * (q + 1);

  if (r == 0) {
    branch = "cut-spine-through-o";
    Path cycle = Path::single(frame.origin);
    cycle.extend(frame.line(q), build_spine(partition_, m, std::nullopt, true).path);
    return cycle.close(frame.line(m));
  }
  if (r == 1) {
    branch = "spine-through-o";
    Path cycle = Path::single(frame.origin);
    cycle.extend(frame.line(0), build_spine(partition_, m).path);
    return cycle.close(frame.line(m));
  }
  if (m >= s) return std::nullopt;

  struct Variant {
    const char* name;
    bool cut;
    Direction dir;
    bool reroute;
  };
  static constexpr Variant kUncutPos{"spine+positive", false, Direction::positive, false};
  static constexpr Variant kUncutNeg{"spine+negative", false, Direction::negative, false};
  static constexpr Variant kCutPos{"cut-spine+positive", true, Direction::positive, false};
  static constexpr Variant kCutNeg{"cut-spine+negative", true, Direction::negative, false};
  static constexpr Variant kReroute{"rerouted-spine+shifted", false, Direction::positive, true};

  const int residue = r % (q + 1);
  Variant primary = kUncutPos;
  switch (residue) {
    case 0: primary = kCutNeg; break;
    case 1: primary = kUncutNeg; break;
    case 2: primary = kCutPos; break;
    case 3: primary = kUncutPos; break;
    default: primary = (m + residue - 2 <= q) ? kUncutPos : kReroute; break;
  }
  const Variant order[] = {primary, kUncutPos, kUncutNeg, kCutPos, kCutNeg, kReroute};
  for (std::size_t i = 0; i < std::size(order); ++i) {
    const Variant& v = order[i];
    if (i > 0 && std::string_view(v.name) == primary.name) continue;
    std::optional<EmbeddedCycle> c;
    if (v.reroute) {
      c = rerouted(m, r);
    } else {
      const int count = v.cut ? r : r - 1;
      c = attach(m, v.cut, v.dir, static_cast<std::size_t>(count));
    }
    if (accept(c)) {
      branch = std::string(v.name) + (i == 0 ? "" : ":fallback");
      return c;
    }
  }
  branch = primary.name;
  return std::nullopt;
}

Embedding embed_affine_cycle(const Plane& plane, int k, EmbedOptions options) {
  return AffineEmbedder(plane, options).embed(k);
}

}  // namespace planecycles
