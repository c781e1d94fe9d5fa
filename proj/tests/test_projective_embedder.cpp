#include <doctest.h>

#include <algorithm>

#include "planecycles/plane_io.hpp"
#include "planecycles/projective_embedder.hpp"

using namespace planecycles;

namespace {

Plane pg(std::uint32_t p, std::uint32_t k = 1) { return build_projective_classical(make_field(p, k)); }

Plane nearfield() { return load_plane(std::string(PLANECYCLES_TEST_DATA) + "/nearfield9.txt"); }

bool contains(const std::vector<PointId>& v, PointId p) { return std::find(v.begin(), v.end(), p) != v.end(); }

}  // namespace

TEST_CASE("context: points at infinity and their lines") {
  const Plane p7 = pg(7);
  const ProjectiveContext ctx = make_context(p7);
  const int q = ctx.q();
  CHECK(q == 7);
  CHECK(ctx.line_at_infinity == p7.num_lines() - 1);
  REQUIRE(ctx.infinite_points.size() == static_cast<std::size_t>(q + 1));
  for (int i = 0; i <= q; ++i) {
    const PointId inf = ctx.at_infinity(i);
    CHECK(p7.incident(inf, ctx.line_at_infinity));
    CHECK(p7.incident(inf, ctx.line(i)));
    CHECK(p7.incident(ctx.origin, ctx.line(i)));
    CHECK(static_cast<int>(p7.lines_through(inf).size()) == q + 1);
  }
  // Every cycle point is finite and sits on the pencil line of its level.
  for (int c = 1; c <= ctx.s(); ++c) {
    const StructuredCycle& cyc = ctx.cycle(c);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      CHECK_FALSE(p7.incident(cyc.points[i], ctx.line_at_infinity));
      CHECK(p7.incident(cyc.points[i], ctx.line(cyc.level_at(static_cast<std::ptrdiff_t>(i), q))));
    }
  }
}

TEST_CASE("anchors satisfy their defining incidences") {
  for (const Plane& plane : {pg(5), pg(7), pg(2, 3), nearfield()}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const ProjectiveContext ctx = make_context(plane, std::nullopt, seed);
      const AnchorSet anchors = select_anchors(ctx, seed);
      const int q = ctx.q();
      const int s = ctx.s();
      REQUIRE(static_cast<int>(anchors.anchors.size()) == s);
      for (int i = 1; i <= s; ++i) {
        const Anchor& a = anchors.at(i);
        CHECK(plane.incident(a.w, ctx.line(i - 2)));
        CHECK(plane.incident(a.v, ctx.line(i - 1)));
        CHECK(plane.incident(a.u, ctx.line(q)));
        CHECK(a.edge == plane.line_through(a.w, ctx.at_infinity(i)));
        CHECK(plane.incident(a.v, a.edge));
        CHECK(a.prefix.size() == static_cast<std::size_t>(q - i + 2));
        CHECK(a.prefix.front() == a.v);
        CHECK(a.prefix.back() == a.u);
        CHECK(a.long_path.front() == a.v);
        CHECK(a.long_path.back() == a.w);
        CHECK(a.long_path.size() == ctx.cycle(i).size());
        CHECK(std::find(a.long_path.lines.begin(), a.long_path.lines.end(), a.edge) == a.long_path.lines.end());
      }
    }
  }
}

TEST_CASE("path P has the predicted size and leftovers") {
  for (const Plane& plane : {pg(3), pg(5), pg(2, 3), nearfield()}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const ProjectiveContext ctx = make_context(plane, std::nullopt, seed);
      const AnchorSet anchors = select_anchors(ctx, seed);
      const InfinityPath p = build_infinity_path(ctx, anchors);
      const int q = ctx.q(), s = ctx.s();
      CHECK(p.path.size() == static_cast<std::size_t>(q * q + s - 2));
      CHECK(p.path.front() == anchors.at(1).v);
      CHECK(p.path.back() == anchors.at(s).w);
      for (int j = 1; j < s; ++j) CHECK(contains(p.path.points, ctx.at_infinity(j)));
      CHECK(p.unused == unused_resources(plane, p.path));
      CHECK(p.unused.points.count(ctx.origin));
      CHECK(p.unused.lines.count(ctx.line_at_infinity));
    }
  }
}

TEST_CASE("closure cycles") {
  const Plane p7 = pg(7);
  const ProjectiveContext ctx = make_context(p7);
  const AnchorSet anchors = select_anchors(ctx);
  const int q = ctx.q(), s = ctx.s();
  for (int extra = 0; extra <= 2; ++extra) {
    const EmbeddedCycle c = closure_cycle(ctx, anchors, extra);
    CHECK(c.k() == q * q + s + extra);
    CHECK(verify_embedding(p7, c).ok);
    CHECK(contains(c.points, ctx.at_infinity(s)));
    CHECK(contains(c.points, ctx.at_infinity(0)) == (extra != 1));
    CHECK(contains(c.points, ctx.at_infinity(q)) == (extra > 0));
    CHECK(contains(c.points, ctx.origin) == (extra > 0));
  }
}

TEST_CASE("every family is valid across its parameter range") {
  for (const Plane& plane : {pg(3), pg(5), pg(7), pg(2, 3), pg(3, 2), nearfield()}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const ProjectiveContext ctx = make_context(plane, std::nullopt, seed);
      const AnchorSet anchors = select_anchors(ctx, seed);
      const int q = ctx.q(), s = ctx.s();
      for (int i = 2; i <= s; ++i) {
        const EmbeddedCycle c = truncation_cycle(ctx, anchors, i);
        CHECK(c.k() == q * q - q + s + i);
        CHECK(verify_embedding(plane, c).ok);
      }
      if (s < q - 1) {
        const EmbeddedCycle b = bridge_cycle(ctx, anchors);
        CHECK(b.k() == q * q - q + 2 * s + 1);
        CHECK(verify_embedding(plane, b).ok);
        for (int j = 1; j <= q - s; ++j) {
          const EmbeddedCycle g = ladder_cycle(ctx, anchors, j);
          CHECK(g.k() == q * q + s + j);
          CHECK(verify_embedding(plane, g).ok);
        }
      }
      for (int i = s; i <= q - 1; ++i) {
        const EmbeddedCycle t = tail_cycle(ctx, anchors, i);
        CHECK(t.k() == q * q + s - q + i + 2);
        CHECK(verify_embedding(plane, t).ok);
      }
      for (int k = q * q + 1; k <= q * q + s + 2; ++k) {
        std::string branch;
        const EmbeddedCycle c = closure_range_cycle(ctx, anchors, k, &branch);
        CHECK(c.k() == k);
        CHECK(verify_embedding(plane, c).ok);
        CHECK_FALSE(branch.empty());
      }
      if (s < q - 1) {
        for (int k = q * q + s + 1; k <= q * q + q + 1; ++k) {
          std::string branch;
          const EmbeddedCycle c = ladder_range_cycle(ctx, anchors, k, &branch);
          CHECK(c.k() == k);
          CHECK(verify_embedding(plane, c).ok);
        }
      }
    }
  }
}

TEST_CASE("the (q^2+q)-cycle misses only O and one line") {
  const Plane p7 = pg(7);
  const ProjectiveContext ctx = make_context(p7);
  const AnchorSet anchors = select_anchors(ctx);
  const int q = ctx.q(), s = ctx.s();
  REQUIRE(s < q - 1);
  const EmbeddedCycle c = ladder_cycle(ctx, anchors, q - s);
  CHECK(c.k() == q * q + q);
  const PointId p_q1 = anchors.at(s).prefix.points[static_cast<std::size_t>(q - s)];
  const Resources want{{ctx.origin}, {p7.line_through(p_q1, ctx.at_infinity(0))}};
  CHECK(unused_resources(p7, c) == want);
}

TEST_CASE("Hamiltonian cycles use every point and line") {
  for (const Plane& plane : {pg(2, 2), pg(7), nearfield()}) {
    const int n = static_cast<int>(plane.n_q());
    const Embedding em = embed_projective_cycle(plane, n);
    CHECK(em.cycle.k() == n);
    CHECK(em.report.ok);
    const Resources none = unused_resources(plane, em.cycle);
    CHECK(none.points.empty());
    CHECK(none.lines.empty());
  }
}

TEST_CASE("full sweeps of small projective planes") {
  for (const Plane& plane : {pg(2), pg(3), pg(2, 2), pg(5)}) {
    const ProjectiveEmbedder e(plane);
    for (int k = 3; k <= plane.n_q(); ++k) {
      const Embedding em = e.embed(k);
      CHECK(em.cycle.k() == k);
      CHECK(em.report.ok);
    }
  }
}

TEST_CASE("seeded sweeps, including the nearfield plane") {
  for (const Plane& plane : {pg(7), pg(2, 3), nearfield()}) {
    for (std::uint64_t seed : {1u, 9u}) {
      EmbedOptions opts;
      opts.seed = seed;
      const ProjectiveEmbedder e(plane, opts);
      for (int k = 3; k <= plane.n_q(); ++k) CHECK(e.embed(k).report.ok);
    }
  }
}

TEST_CASE("projective embedding errors") {
  const Plane p2 = pg(2);
  try {
    embed_projective_cycle(p2, 8);
    FAIL("expected an error");
  } catch (const EmbedError& e) {
    CHECK(e.code() == EmbedErrorCode::OutOfRange);
  }
  CHECK_THROWS_AS(embed_projective_cycle(p2, 2), EmbedError);
  CHECK_THROWS_AS(ProjectiveEmbedder(build_affine_classical(make_field(3, 1))), EmbedError);
}
