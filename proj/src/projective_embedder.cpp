#include "planecycles/projective_embedder.hpp"

#include <algorithm>
#include <random>

#include "planecycles/verification.hpp"

namespace planecycles {
namespace {

[[noreturn]] void fail(EmbedErrorCode code, const std::string& what) { throw EmbedError(code, what); }

std::string range_text(int lo, int hi) { return std::to_string(lo) + ".." + std::to_string(hi); }

// P closed into the cycle C of length q^2+s: W_s -> (s) -> (0) -> V_1.
LinkGraph base_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, const InfinityPath& p) {
  const int s = ctx.s();
  LinkGraph g;
  g.add_path(p.path);
  g.add_point(ctx.at_infinity(s));
  g.add_point(ctx.at_infinity(0));
  g.link(anchors.at(s).w, ctx.at_infinity(s), anchors.at(s).edge);
  g.link(ctx.at_infinity(s), ctx.at_infinity(0), ctx.line_at_infinity);
  g.link(ctx.at_infinity(0), anchors.at(1).v, ctx.line(0));
  return g;
}

// R[a] = P_{s-1+a}: the prefix of the last anchor, V_s = R[0] .. U_s = R[q-s+1].
const std::vector<PointId>& relabelled(const AnchorSet& anchors, int s) { return anchors.at(s).prefix.points; }

}  // namespace

// ---------------------------------------------------------------------------
// Context

PointId ProjectiveContext::to_projective(PointId affine) const {
  return restriction->point_to_projective.at(static_cast<std::size_t>(affine));
}

LineId ProjectiveContext::line_to_projective(LineId affine) const {
  return restriction->line_to_projective.at(static_cast<std::size_t>(affine));
}

ProjectiveContext make_context(const Plane& plane, std::optional<LineId> line_at_infinity,
                               std::optional<std::uint64_t> seed) {
  if (plane.kind() != PlaneKind::projective) fail(EmbedErrorCode::WrongKind, "context needs a projective plane");
  std::optional<std::mt19937_64> rng;
  if (seed) rng.emplace(*seed);

  LineId linf = plane.num_lines() - 1;
  if (line_at_infinity) {
    linf = *line_at_infinity;
  } else if (rng) {
    linf = std::uniform_int_distribution<LineId>(0, plane.num_lines() - 1)(*rng);
  }
  if (linf < 0 || linf >= plane.num_lines()) fail(EmbedErrorCode::InvalidLine, "no line " + std::to_string(linf));

  ProjectiveContext ctx;
  ctx.plane = &plane;
  ctx.line_at_infinity = linf;
  auto restriction = std::make_shared<AffineRestriction>(affine_from_projective(plane, linf));
  ctx.restriction = restriction;
  const Plane& affine = restriction->plane;

  if (rng) {
    const PointId o = std::uniform_int_distribution<PointId>(0, affine.num_points() - 1)(*rng);
    auto through = affine.lines_through(o);
    std::vector<LineId> pencil(through.begin(), through.end());
    std::shuffle(pencil.begin(), pencil.end(), *rng);
    ctx.partition = cycle_partition(affine, choose_frame(affine, o, std::move(pencil)), &*rng);
  } else {
    ctx.partition = cycle_partition(affine, choose_frame(affine));
  }

  const Frame& frame = ctx.partition.frame;
  ctx.origin = ctx.to_projective(frame.origin);
  for (int i = 0; i <= frame.q; ++i) {
    ctx.pencil.push_back(ctx.line_to_projective(frame.line(i)));
    ctx.infinite_points.push_back(
        restriction->class_to_point.at(static_cast<std::size_t>(frame.line_class(i))));
  }
  for (const StructuredCycle& c : ctx.partition.cycles) {
    StructuredCycle out = c;
    for (PointId& p : out.points) p = ctx.to_projective(p);
    for (LineId& l : out.lines) l = ctx.line_to_projective(l);
    ctx.cycles.push_back(std::move(out));
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Anchors and the infinity path

AnchorSet select_anchors(const ProjectiveContext& ctx, std::optional<std::uint64_t> seed) {
  const int q = ctx.q();
  const Plane& plane = *ctx.plane;
  std::optional<std::mt19937_64> rng;
  if (seed) rng.emplace(*seed);

  AnchorSet set;
  for (int i = 1; i <= ctx.s(); ++i) {
    const StructuredCycle& c = ctx.cycle(i);
    const auto candidates = c.positions_on_level(ctx.partition.frame.wrap(i - 2), q);
    if (candidates.empty()) fail(EmbedErrorCode::AnchorFailure, "C_" + std::to_string(i) + " misses l_{i-2}");
    std::size_t w_pos = candidates.front();
    if (rng) {
      w_pos = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(*rng)];
    } else {
      for (std::size_t pos : candidates) {
        if (c.points[pos] < c.points[w_pos]) w_pos = pos;
      }
    }
    const auto wp = static_cast<std::ptrdiff_t>(w_pos);

    Anchor a;
    a.index = i;
    a.w = c.at(wp);
    a.v = c.at(wp + 1);
    a.edge = c.line_after(wp);
    const LineId expected = plane.line_through(a.w, ctx.at_infinity(i));
    if (a.edge != expected) {
      fail(EmbedErrorCode::AnchorFailure, "edge V_" + std::to_string(i) + "W_" + std::to_string(i) +
                                              " is not the parallel to l_i through W_i");
    }
    a.long_path = directed_subpath(c, a.v, Direction::positive, c.size());
    const auto prefix_len = static_cast<std::size_t>(q - i + 2);
    if (a.long_path.back() != a.w || prefix_len > a.long_path.size()) {
      fail(EmbedErrorCode::AnchorFailure, "long path of C_" + std::to_string(i) + " is malformed");
    }
    a.prefix.points.assign(a.long_path.points.begin(), a.long_path.points.begin() + static_cast<std::ptrdiff_t>(prefix_len));
    a.prefix.lines.assign(a.long_path.lines.begin(), a.long_path.lines.begin() + static_cast<std::ptrdiff_t>(prefix_len - 1));
    a.u = a.prefix.back();
    const auto u_pos = c.position_of(a.u);
    if (!u_pos || c.level_at(static_cast<std::ptrdiff_t>(*u_pos), q) != q) {
      fail(EmbedErrorCode::AnchorFailure, "U_" + std::to_string(i) + " is not on l_q");
    }
    set.anchors.push_back(std::move(a));
  }
  return set;
}

Resources unused_resources(const Plane& plane, const Path& path) {
  Resources out;
  const std::set<PointId> used_points(path.points.begin(), path.points.end());
  const std::set<LineId> used_lines(path.lines.begin(), path.lines.end());
  for (PointId p = 0; p < plane.num_points(); ++p) {
    if (!used_points.count(p)) out.points.insert(p);
  }
  for (LineId l = 0; l < plane.num_lines(); ++l) {
    if (!used_lines.count(l)) out.lines.insert(l);
  }
  return out;
}

Resources unused_resources(const Plane& plane, const EmbeddedCycle& cycle) {
  return unused_resources(plane, Path{cycle.points, cycle.lines});
}

InfinityPath build_infinity_path(const ProjectiveContext& ctx, const AnchorSet& anchors) {
  InfinityPath out;
  for (int i = 1; i <= ctx.s(); ++i) {
    const Anchor& a = anchors.at(i);
    if (i > 1) {
      out.path.append(anchors.at(i - 1).edge, ctx.at_infinity(i - 1));
    }
    out.path.extend(ctx.line(i - 1), a.long_path);
  }
  out.unused = unused_resources(*ctx.plane, out.path);
  return out;
}

// ---------------------------------------------------------------------------
// Lengths q^2+1 .. q^2+s+2

EmbeddedCycle closure_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, int extra) {
  if (extra < 0 || extra > 2) fail(EmbedErrorCode::OutOfRange, "closure takes 0, 1 or 2 extra points");
  const int q = ctx.q();
  const int s = ctx.s();
  Path c = build_infinity_path(ctx, anchors).path;
  c.append(anchors.at(s).edge, ctx.at_infinity(s));
  if (extra == 2) {
    c.append(ctx.line(s), ctx.origin);
    c.append(ctx.line(q), ctx.at_infinity(q));
    c.append(ctx.line_at_infinity, ctx.at_infinity(0));
  } else if (extra == 1) {
    c.append(ctx.line_at_infinity, ctx.at_infinity(q));
    c.append(ctx.line(q), ctx.origin);
    return c.close(ctx.line(0));
  } else {
    c.append(ctx.line_at_infinity, ctx.at_infinity(0));
  }
  return c.close(ctx.line(0));
}

EmbeddedCycle truncation_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, int i) {
  const int q = ctx.q();
  if (i < 2 || i > ctx.s()) fail(EmbedErrorCode::OutOfRange, "truncation index outside " + range_text(2, ctx.s()));
  LinkGraph g = base_cycle(ctx, anchors, build_infinity_path(ctx, anchors));
  const Anchor& a = anchors.at(i);
  for (std::size_t j = 0; j + 1 < a.prefix.size(); ++j) g.drop(a.prefix.points[j]);
  g.add_point(ctx.origin);
  g.link(ctx.at_infinity(i - 1), ctx.origin, ctx.line(i - 1));
  g.link(ctx.origin, a.u, ctx.line(q));
  return g.trace_cycle();
}

EmbeddedCycle bridge_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors) {
  const int q = ctx.q();
  const int s = ctx.s();
  LinkGraph g = base_cycle(ctx, anchors, build_infinity_path(ctx, anchors));
  const auto& r = relabelled(anchors, s);
  for (int a = 0; a <= q - s - 1; ++a) g.drop(r[static_cast<std::size_t>(a)]);
  g.add_point(ctx.origin);
  g.link(ctx.at_infinity(s - 1), ctx.origin, ctx.line(s - 1));
  g.link(ctx.origin, r[static_cast<std::size_t>(q - s)], ctx.line(q - 1));
  return g.trace_cycle();
}

EmbeddedCycle tail_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, int i) {
  const int q = ctx.q();
  const int s = ctx.s();
  if (i < s || i > q - 1) fail(EmbedErrorCode::OutOfRange, "tail index outside " + range_text(s, q - 1));
  LinkGraph g = base_cycle(ctx, anchors, build_infinity_path(ctx, anchors));
  const auto& r = relabelled(anchors, s);
  const auto at = [&](int level) { return r[static_cast<std::size_t>(level - s + 1)]; };
  if (i == q - 1) {
    g.unlink(at(q - 1), at(q));
  } else {
    for (int lvl = i + 1; lvl <= q - 1; ++lvl) g.drop(at(lvl));
  }
  g.add_point(ctx.origin);
  g.link(at(i), ctx.origin, ctx.line(i));
  g.link(ctx.origin, at(q), ctx.line(q));
  return g.trace_cycle();
}

EmbeddedCycle closure_range_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, int k, std::string* branch) {
  const int q = ctx.q();
  const int s = ctx.s();
  const int base = q * q + s;
  if (k < q * q + 1 || k > base + 2) {
    fail(EmbedErrorCode::OutOfRange, "k=" + std::to_string(k) + " outside " + range_text(q * q + 1, base + 2));
  }
  auto named = [&](const char* name, EmbeddedCycle c) {
    if (branch) *branch = name;
    return c;
  };
  if (k == base + 2) return named("closure-o-then-infinity", closure_cycle(ctx, anchors, 2));
  if (k == base + 1) return named("closure-infinity-then-o", closure_cycle(ctx, anchors, 1));
  if (k == base) return named("closure-infinity", closure_cycle(ctx, anchors, 0));

  const int i_trunc = k - (q * q - q + s);
  if (q + 1 <= 2 * s && i_trunc >= q - s + 1 && i_trunc <= s) {
    return named("truncate-anchor-arc", truncation_cycle(ctx, anchors, i_trunc));
  }
  if (k == q * q - q + 2 * s + 1) return named("bridge-through-o", bridge_cycle(ctx, anchors));
  const int i_tail = k - (base - q + 2);
  if (i_tail >= s && i_tail <= q - 1) return named("tail-through-o", tail_cycle(ctx, anchors, i_tail));
  fail(EmbedErrorCode::ConstructionFailed, "no infinity-path construction for k=" + std::to_string(k));
}

// ---------------------------------------------------------------------------
// Lengths q^2+s+1 .. q^2+q+1

namespace {

// G_j as a closed link graph.
LinkGraph ladder_graph(const ProjectiveContext& ctx, const AnchorSet& anchors, int j) {
  const int q = ctx.q();
  const int s = ctx.s();
  if (s >= q - 1) fail(EmbedErrorCode::OutOfRange, "ladder needs s < q-1");
  if (j < 1 || j > q - s) fail(EmbedErrorCode::OutOfRange, "ladder step " + std::to_string(j) + " outside " + range_text(1, q - s));

  const InfinityPath p = build_infinity_path(ctx, anchors);
  const Anchor& last = anchors.at(s);
  const auto& r = relabelled(anchors, s);
  const auto& rl = last.prefix.lines;  // rl[a] joins r[a] and r[a+1]

  LinkGraph g;
  g.add_path(p.path);
  // P~: move the V_s edge from P_s to W_s, so the path now ends at P_s.
  g.unlink(r[0], r[1]);
  g.link(last.w, r[0], last.edge);
  for (int step = 1; step <= j; ++step) {
    const auto a = static_cast<std::size_t>(step);
    const PointId rung = ctx.at_infinity(s + step);
    g.unlink(r[a], r[a + 1]);
    g.add_point(rung);
    g.link(r[a], rung, rl[a - 1]);
    g.link(rung, r[a + 1], ctx.line(s + step));
  }
  g.add_point(ctx.at_infinity(0));
  g.add_point(ctx.at_infinity(s));
  g.link(anchors.at(1).v, ctx.at_infinity(0), ctx.line(0));
  g.link(ctx.at_infinity(0), ctx.at_infinity(s), ctx.line_at_infinity);
  g.link(ctx.at_infinity(s), r[1], ctx.line(s));
  return g;
}

}  // namespace

EmbeddedCycle ladder_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, int j) {
  return ladder_graph(ctx, anchors, j).trace_cycle();
}

EmbeddedCycle ladder_range_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, int k, std::string* branch) {
  const int q = ctx.q();
  const int s = ctx.s();
  const int n = q * q + q + 1;
  if (s >= q - 1) fail(EmbedErrorCode::OutOfRange, "ladder needs s < q-1");
  if (k < q * q + s + 1 || k > n) {
    fail(EmbedErrorCode::OutOfRange, "k=" + std::to_string(k) + " outside " + range_text(q * q + s + 1, n));
  }
  if (k < n) {
    if (branch) *branch = "ladder";
    return ladder_cycle(ctx, anchors, k - q * q - s);
  }

  // Q leaves O and the line l_0 + P_{q-1} free; seven edits absorb both.
  if (branch) *branch = "hamiltonian";
  LinkGraph g = ladder_graph(ctx, anchors, q - s);
  const auto& r = relabelled(anchors, s);
  const auto& rl = anchors.at(s).prefix.lines;
  const PointId p_q1 = r[static_cast<std::size_t>(q - s)];
  const PointId p_q = r[static_cast<std::size_t>(q - s + 1)];
  const PointId o = ctx.origin;
  g.unlink(ctx.at_infinity(0), ctx.at_infinity(s));
  g.unlink(ctx.at_infinity(q - 1), p_q1);
  g.unlink(ctx.at_infinity(q), p_q);
  g.add_point(o);
  g.link(ctx.at_infinity(s), ctx.at_infinity(q), ctx.line_at_infinity);
  g.link(ctx.at_infinity(q - 1), o, ctx.line(q - 1));
  g.link(p_q, o, ctx.line(q));
  g.link(p_q1, ctx.at_infinity(0), rl[static_cast<std::size_t>(q - s)]);
  return g.trace_cycle();
}

// ---------------------------------------------------------------------------
// Embedder

ProjectiveEmbedder::ProjectiveEmbedder(const Plane& plane, EmbedOptions options,
                                       std::optional<LineId> line_at_infinity)
    : plane_(&plane), options_(options) {
  if (plane.kind() != PlaneKind::projective) {
    fail(EmbedErrorCode::WrongKind, "projective embedder needs a projective plane");
  }
  ctx_ = make_context(plane, line_at_infinity, options.seed);
  std::optional<std::uint64_t> anchor_seed;
  if (options.seed) anchor_seed = *options.seed ^ 0x9e3779b97f4a7c15ULL;
  anchors_ = select_anchors(ctx_, anchor_seed);
  affine_ = std::make_unique<AffineEmbedder>(ctx_.restriction->plane, ctx_.partition, options);
}

Embedding ProjectiveEmbedder::embed(int k) const {
  const int q = ctx_.q();
  const int s = ctx_.s();
  const int n = q * q + q + 1;
  if (k < 3 || k > n) fail(EmbedErrorCode::OutOfRange, "k=" + std::to_string(k) + " outside " + range_text(3, n));

  Embedding out;
  if (options_.search_small_orders && q <= 3) {
    out.branch = "search";
    auto found = brute_force_cycle(*plane_, k, options_.search_budget);
    if (!found.cycle) fail(EmbedErrorCode::ConstructionFailed, "search found no " + std::to_string(k) + "-gon");
    out.cycle = std::move(*found.cycle);
  } else if (k <= q * q) {
    Embedding inner = affine_->embed(k);
    out.branch = "affine:" + inner.branch;
    for (PointId p : inner.cycle.points) out.cycle.points.push_back(ctx_.to_projective(p));
    for (LineId l : inner.cycle.lines) out.cycle.lines.push_back(ctx_.line_to_projective(l));
  } else if (k <= q * q + s + 2) {
    out.cycle = closure_range_cycle(ctx_, anchors_, k, &out.branch);
  } else {
    out.cycle = ladder_range_cycle(ctx_, anchors_, k, &out.branch);
  }
  out.report = verify_embedding(*plane_, out.cycle);
  if (!out.report.ok || out.cycle.k() != k) {
    fail(EmbedErrorCode::ConstructionFailed,
         "branch " + out.branch + " produced an invalid cycle for k=" + std::to_string(k));
  }
  return out;
}

Embedding embed_projective_cycle(const Plane& plane, int k, EmbedOptions options) {
  return ProjectiveEmbedder(plane, options).embed(k);
}

}  // namespace planecycles
