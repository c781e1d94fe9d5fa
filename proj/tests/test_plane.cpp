#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <set>

#include "planecycles/plane.hpp"
#include "planecycles/plane_io.hpp"

using namespace planecycles;

namespace {

Plane ag(std::uint32_t p, std::uint32_t k = 1) { return build_affine_classical(make_field(p, k)); }
Plane pg(std::uint32_t p, std::uint32_t k = 1) { return build_projective_classical(make_field(p, k)); }

std::set<std::vector<PointId>> line_set(const Plane& plane) {
  return {plane.lines().begin(), plane.lines().end()};
}

// Brute-force isomorphism between two 7-point planes.
bool isomorphic_small(const Plane& a, const Plane& b) {
  if (a.num_points() != b.num_points() || a.num_lines() != b.num_lines()) return false;
  std::vector<PointId> perm(static_cast<std::size_t>(a.num_points()));
  std::iota(perm.begin(), perm.end(), 0);
  const auto target = line_set(b);
  do {
    bool ok = true;
    for (const auto& line : a.lines()) {
      std::vector<PointId> image;
      for (PointId p : line) image.push_back(perm[static_cast<std::size_t>(p)]);
      std::sort(image.begin(), image.end());
      if (!target.count(image)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

const char* kFano =
    "# Fano plane\n"
    "plane projective order 2 points 7 lines 7\n"
    "\n"
    "line 0: 0 1 3\nline 1: 1 2 4\nline 2: 2 3 5\nline 3: 3 4 6\n"
    "line 4: 0 4 5   # trailing comment\nline 5: 1 5 6\nline 6: 0 2 6\n";

}  // namespace

TEST_CASE("classical affine planes have the forced counts") {
  const Plane a2 = ag(2);
  CHECK(a2.num_points() == 4);
  CHECK(a2.num_lines() == 6);
  CHECK(a2.parallel_classes().size() == 3);
  for (const auto& c : a2.parallel_classes()) CHECK(c.size() == 2);

  const Plane a3 = ag(3);
  CHECK(a3.num_points() == 9);
  CHECK(a3.num_lines() == 12);
  for (const auto& l : a3.lines()) CHECK(l.size() == 3);

  const Plane a4 = ag(2, 2);
  CHECK(a4.num_points() == 16);
  CHECK(a4.num_lines() == 20);
  CHECK_NOTHROW(validate_plane(a4));
  CHECK(a4.parallel_classes().size() == 5);
}

TEST_CASE("classical projective planes have the forced counts and validate") {
  const Plane fano = pg(2);
  CHECK(fano.num_points() == 7);
  CHECK(fano.num_lines() == 7);
  for (const auto& l : fano.lines()) CHECK(l.size() == 3);
  CHECK(pg(3).num_points() == 13);
  CHECK(pg(3).num_lines() == 13);
  CHECK(pg(3).n_q() == 13);
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    CHECK(find_axiom_violations(pg(p, k)).empty());
    CHECK(find_axiom_violations(ag(p, k)).empty());
  }
}

TEST_CASE("AG(2,3) joins and meets in coordinates") {
  const Plane a3 = ag(3);
  // Point (x,y) is 3x+y; y = x is line 3, y = x + 1 is line 4.
  CHECK(a3.join(0, 4) == 3);
  CHECK_FALSE(a3.meet(3, 4).has_value());
  CHECK(a3.meet(3, 0) == 0);
  CHECK(a3.point_labels()[4] == "(1,1)");
  CHECK(a3.line_through(0, 0) == kNone);
}

TEST_CASE("parallel through a point of the line is the line itself") {
  for (const Plane& plane : {ag(3), ag(2, 2), ag(5)}) {
    for (LineId l = 0; l < plane.num_lines(); ++l) {
      for (PointId p : plane.points_on(l)) CHECK(plane.parallel_through(l, p) == l);
    }
  }
}

TEST_CASE("projective meets are always defined") {
  const Plane p3 = pg(3);
  for (LineId a = 0; a < p3.num_lines(); ++a) {
    for (LineId b = a + 1; b < p3.num_lines(); ++b) CHECK(p3.meet(a, b).has_value());
  }
}

TEST_CASE("join and meet errors") {
  const Plane a3 = ag(3);
  try {
    a3.join(2, 2);
    FAIL("expected an error");
  } catch (const PlaneError& e) {
    CHECK(e.code() == PlaneErrorCode::SamePoint);
  }
  CHECK_THROWS_AS(a3.check_point(9), PlaneError);
  CHECK_THROWS_AS(a3.check_line(-1), PlaneError);
  CHECK_THROWS_AS(pg(2).parallel_through(0, 0), PlaneError);
}

TEST_CASE("completing AG(2,2) gives the Fano plane") {
  const ProjectiveCompletion c = projective_from_affine(ag(2));
  CHECK(c.plane.kind() == PlaneKind::projective);
  CHECK(find_axiom_violations(c.plane).empty());
  CHECK(isomorphic_small(c.plane, pg(2)));
}

TEST_CASE("completion adds one point to every affine line") {
  const Plane a3 = ag(3);
  const ProjectiveCompletion c = projective_from_affine(a3);
  CHECK(c.plane.num_points() == 13);
  for (LineId l = 0; l < a3.num_lines(); ++l) {
    CHECK(c.plane.points_on(l).size() == a3.points_on(l).size() + 1);
  }
  CHECK(c.line_at_infinity == 12);
}

TEST_CASE("restriction undoes completion") {
  for (const Plane& a : {ag(3), ag(2, 2)}) {
    const ProjectiveCompletion c = projective_from_affine(a);
    const AffineRestriction r = affine_from_projective(c.plane, c.line_at_infinity);
    CHECK(r.plane.lines() == a.lines());
    CHECK(r.plane.parallel_classes() == a.parallel_classes());
    CHECK(r.class_to_point == c.class_to_point);
  }
}

TEST_CASE("removing any line of the Fano plane leaves AG(2,2)") {
  const Plane fano = pg(2);
  for (LineId l = 0; l < 7; ++l) {
    const AffineRestriction r = affine_from_projective(fano, l);
    CHECK(r.plane.num_points() == 4);
    CHECK(r.plane.num_lines() == 6);
    CHECK(find_axiom_violations(r.plane).empty());
  }
  const AffineRestriction r4 = affine_from_projective(pg(2, 2), 3);
  CHECK(r4.plane.parallel_classes().size() == 5);
  for (const auto& c : r4.plane.parallel_classes()) CHECK(c.size() == 4);
}

TEST_CASE("plane files: parse, canonical form and round trip") {
  const Plane fano = read_plane(kFano);
  CHECK(fano.num_lines() == 7);
  CHECK(fano.points_on(4).size() == 3);
  const std::string canonical = canonical_text(fano);
  CHECK(canonical.find('#') == std::string::npos);
  CHECK(canonical_text(read_plane(canonical)) == canonical);
  CHECK(fano.digest() == sha256_hex(canonical));

  const auto path = std::filesystem::temp_directory_path() / "planecycles_roundtrip_ag4.txt";
  const Plane a4 = ag(2, 2);
  save_plane(a4, path);
  const Plane back = load_plane(path);
  CHECK(back.lines() == a4.lines());
  CHECK(back.parallel_classes() == a4.parallel_classes());
  CHECK(back.digest() == a4.digest());
  std::filesystem::remove(path);
}

TEST_CASE("sha256 matches the standard test vector") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_plane("plane projective order 2 points 7 lines 1\nline 0: 0 1 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 13);
  }
  CHECK_THROWS_AS(parse_plane(""), ParseError);
  CHECK_THROWS_AS(parse_plane("plane hexagonal order 2 points 7 lines 0\n"), ParseError);
}

TEST_CASE("two lines through the same two points are rejected with both points") {
  const char* text =
      "plane partial order 0 points 4 lines 2\n"
      "line 0: 0 1 2\n"
      "line 1: 0 1 3\n";
  try {
    read_plane(text);
    FAIL("expected an axiom violation");
  } catch (const AxiomViolation& e) {
    CHECK(e.axiom() == "two-points-one-line");
    CHECK(e.witness_points() == std::vector<PointId>{0, 1});
    CHECK(e.witness_lines() == std::vector<LineId>{0, 1});
  }
}

TEST_CASE("Fano with one incidence removed fails the projective axioms") {
  std::string text = kFano;
  text.replace(text.find("line 0: 0 1 3"), 13, "line 0: 0 1  ");
  const Plane broken = parse_plane(text);
  CHECK(find_axiom_violations(Plane(PlaneKind::partial, 0, 7, broken.lines())).empty());
  try {
    read_plane(text);
    FAIL("expected an axiom violation");
  } catch (const AxiomViolation& e) {
    CHECK(e.axiom() == "line-size");
    CHECK(e.witness_lines() == std::vector<LineId>{0});
  }
}

TEST_CASE("plane kind names round trip") {
  for (PlaneKind k : {PlaneKind::partial, PlaneKind::affine, PlaneKind::projective}) {
    CHECK(parse_plane_kind(to_string(k)) == k);
  }
  CHECK_FALSE(parse_plane_kind("euclidean").has_value());
}
