#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "planecycles/plane_io.hpp"
#include "planecycles/verification.hpp"

using namespace planecycles;

namespace {

Plane fano() { return build_projective_classical(make_field(2, 1)); }
Plane ag(std::uint32_t p) { return build_affine_classical(make_field(p, 1)); }

EmbeddedCycle triangle(const Plane& plane, PointId a, PointId b, PointId c) {
  return {{a, b, c}, {plane.join(a, b), plane.join(b, c), plane.join(c, a)}};
}

// Counts k-gons as 2k-cycles of the Levi graph, walking vertex sequences
// rather than point sequences. Each cycle is seen 2k * 2 times.
std::uint64_t levi_cycle_count(const Plane& plane, int k) {
  const LeviGraph g = levi_graph(plane);
  const int n = g.num_vertices();
  std::uint64_t walks = 0;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::function<void(int)> go = [&](int v) {
    if (static_cast<int>(stack.size()) == 2 * k) {
      const auto& adj = g.adjacency[static_cast<std::size_t>(v)];
      if (std::find(adj.begin(), adj.end(), stack.front()) != adj.end()) ++walks;
      return;
    }
    for (int w : g.adjacency[static_cast<std::size_t>(v)]) {
      if (used[static_cast<std::size_t>(w)] || w < stack.front()) continue;
      used[static_cast<std::size_t>(w)] = true;
      stack.push_back(w);
      go(w);
      stack.pop_back();
      used[static_cast<std::size_t>(w)] = false;
    }
  };
  for (int s = 0; s < n; ++s) {
    used[static_cast<std::size_t>(s)] = true;
    stack = {s};
    go(s);
    used[static_cast<std::size_t>(s)] = false;
  }
  // Rooted at the least vertex, so each cycle appears once per direction.
  return walks / 2;
}

}  // namespace

TEST_CASE("a valid triangle passes every check") {
  const Plane p = fano();
  const VerificationReport r = verify_embedding(p, triangle(p, 0, 1, 3));
  CHECK(r.ok);
  CHECK(r.k == 3);
  CHECK(r.plane_digest == p.digest());
  for (const Check& c : r.checks) CHECK(c.pass);
}

TEST_CASE("a repeated point is reported with its index") {
  const Plane p = ag(3);
  EmbeddedCycle c{{0, 1, 0, 4}, {}};
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const PointId a = c.points[i], b = c.points[(i + 1) % c.points.size()];
    c.lines.push_back(a == b ? 0 : p.join(a, b));
  }
  const VerificationReport r = verify_embedding(p, c);
  CHECK_FALSE(r.ok);
  const Check* d = r.find("distinct-points");
  REQUIRE(d != nullptr);
  CHECK_FALSE(d->pass);
  CHECK_FALSE(d->witness.empty());
}

TEST_CASE("a missing incidence is reported") {
  const Plane p = fano();
  EmbeddedCycle c = triangle(p, 0, 1, 3);
  c.lines[1] = c.lines[0];
  const VerificationReport r = verify_embedding(p, c);
  CHECK_FALSE(r.ok);
  const Check* j = r.find("incidence");
  REQUIRE(j != nullptr);
  CHECK_FALSE(j->pass);
  CHECK(j->witness == std::vector<std::int32_t>{1});
}

TEST_CASE("verification is invariant under rotation and reflection") {
  const Plane p = ag(3);
  const SearchResult found = brute_force_cycle(p, 7);
  REQUIRE(found.status == SearchStatus::found);
  EmbeddedCycle c = *found.cycle;
  CHECK(verify_embedding(p, c).ok);
  for (int r = 0; r < c.k(); ++r) {
    std::rotate(c.points.begin(), c.points.begin() + 1, c.points.end());
    std::rotate(c.lines.begin(), c.lines.begin() + 1, c.lines.end());
    CHECK(verify_embedding(p, c).ok);
  }
  // Reversal: point i is followed by line i-1.
  EmbeddedCycle rev;
  for (int i = c.k() - 1; i >= 0; --i) {
    rev.points.push_back(c.points[static_cast<std::size_t>(i)]);
    rev.lines.push_back(c.lines[static_cast<std::size_t>((i + c.k() - 1) % c.k())]);
  }
  CHECK(verify_embedding(p, rev).ok);
}

TEST_CASE("brute force finds and refutes cycles in small planes") {
  const Plane f = fano();
  const SearchResult seven = brute_force_cycle(f, 7);
  CHECK(seven.status == SearchStatus::found);
  REQUIRE(seven.cycle.has_value());
  CHECK(verify_embedding(f, *seven.cycle).ok);
  CHECK(brute_force_cycle(f, 8).status == SearchStatus::absent);
  CHECK(brute_force_cycle(ag(2), 4).status == SearchStatus::found);
  CHECK(brute_force_cycle(ag(2), 5).status == SearchStatus::absent);
  CHECK(brute_force_cycle(ag(5), 25, 10).status == SearchStatus::budget_exhausted);
  CHECK(to_string(SearchStatus::budget_exhausted) == "budget-exhausted");
}

TEST_CASE("exhaustive k-gon counts match the reference values") {
  const std::vector<std::uint64_t> fano_counts{28, 21, 84, 56, 24};
  for (int k = 3; k <= 7; ++k) {
    CHECK(count_cycles_exhaustive(fano(), k) == fano_counts[static_cast<std::size_t>(k - 3)]);
  }
  CHECK(count_cycles_exhaustive(ag(2), 3) == 4);
  CHECK(count_cycles_exhaustive(ag(2), 4) == 3);
  const std::vector<std::uint64_t> ag3{72, 162, 648, 1728, 3456, 5022, 2880};
  for (int k = 3; k <= 9; ++k) {
    CHECK(count_cycles_exhaustive(ag(3), k) == ag3[static_cast<std::size_t>(k - 3)]);
  }
  CHECK(count_cycles_exhaustive(ag(3), 10) == 0);
}

TEST_CASE("exhaustive counts agree with Levi graph cycle counts") {
  for (int k = 3; k <= 7; ++k) CHECK(count_cycles_exhaustive(fano(), k) == levi_cycle_count(fano(), k));
  for (int k = 3; k <= 6; ++k) CHECK(count_cycles_exhaustive(ag(3), k) == levi_cycle_count(ag(3), k));
}

TEST_CASE("exhaustive counting refuses large planes") {
  CHECK_THROWS_AS(count_cycles_exhaustive(ag(5), 3), VerifyError);
}

TEST_CASE("certification of good and bad planes") {
  const CertificationReport good = certify_plane(build_projective_classical(make_field(2, 2)));
  CHECK(good.ok);
  REQUIRE(good.levi.has_value());
  CHECK(good.levi->degree == 5);
  CHECK(certify_plane(build_affine_classical(make_field(2, 2))).ok);

  const Plane bad(PlaneKind::partial, 0, 4, {{0, 1, 2}, {0, 1, 3}});
  const CertificationReport r = certify_plane(bad);
  CHECK_FALSE(r.ok);
  const Check* four = r.find("no-four-cycle");
  REQUIRE(four != nullptr);
  CHECK_FALSE(four->pass);

  const auto j = to_json(good);
  CHECK(j.at("ok").get<bool>());
  CHECK(j.at("plane_digest").get<std::string>() == good.plane_digest);
}

TEST_CASE("nearfield plane certifies as projective") {
  const Plane nf = load_plane(std::string(PLANECYCLES_TEST_DATA) + "/nearfield9.txt");
  const CertificationReport r = certify_plane(nf);
  CHECK(r.ok);
  CHECK(nf.order() == 9);
}
