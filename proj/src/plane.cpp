#include "planecycles/plane.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "planecycles/plane_io.hpp"

namespace planecycles {
namespace {

constexpr int kMaxPlaneOrder = 256;

std::string join_ids(const std::vector<std::int32_t>& ids) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? " " : "") << ids[i];
  return os.str();
}

std::size_t pair_index(int num_points, PointId a, PointId b) {
  if (a > b) std::swap(a, b);
  const auto n = static_cast<std::size_t>(num_points);
  const auto i = static_cast<std::size_t>(a);
  return i * (2 * n - i - 1) / 2 + static_cast<std::size_t>(b - a - 1);
}

}  // namespace

std::string_view to_string(PlaneKind kind) {
  switch (kind) {
    case PlaneKind::partial: return "partial";
    case PlaneKind::affine: return "affine";
    case PlaneKind::projective: return "projective";
  }
  return "partial";
}

std::optional<PlaneKind> parse_plane_kind(std::string_view text) {
  if (text == "partial") return PlaneKind::partial;
  if (text == "affine") return PlaneKind::affine;
  if (text == "projective") return PlaneKind::projective;
  return std::nullopt;
}

AxiomViolation::AxiomViolation(std::string axiom, std::vector<PointId> points,
                               std::vector<LineId> lines, const std::string& detail)
    : std::runtime_error("axiom '" + axiom + "' violated: " + detail +
                         (points.empty() ? "" : " [points " + join_ids(points) + "]") +
                         (lines.empty() ? "" : " [lines " + join_ids(lines) + "]")),
      axiom_(std::move(axiom)),
      points_(std::move(points)),
      lines_(std::move(lines)) {}

Plane::Plane(PlaneKind kind, int order, int num_points, std::vector<std::vector<PointId>> lines,
             std::vector<std::vector<LineId>> parallel_classes,
             std::vector<std::string> point_labels)
    : kind_(kind),
      order_(order),
      num_points_(num_points),
      lines_(std::move(lines)),
      labels_(std::move(point_labels)) {
  if (num_points < 0) throw PlaneError(PlaneErrorCode::Malformed, "negative point count");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != num_points) {
    throw PlaneError(PlaneErrorCode::Malformed, "label count does not match point count");
  }
  point_lines_.assign(static_cast<std::size_t>(num_points), {});
  for (std::size_t l = 0; l < lines_.size(); ++l) {
    auto& pts = lines_[l];
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
      throw PlaneError(PlaneErrorCode::Malformed,
                       "line " + std::to_string(l) + " lists a point twice");
    }
    for (PointId p : pts) {
      if (p < 0 || p >= num_points) {
        throw PlaneError(PlaneErrorCode::InvalidPoint,
                         "line " + std::to_string(l) + " has point " + std::to_string(p) +
                             " out of range");
      }
      point_lines_[static_cast<std::size_t>(p)].push_back(static_cast<LineId>(l));
    }
  }

  class_of_.assign(lines_.size(), kNone);
  if (kind_ == PlaneKind::affine) {
    parallel_classes_ = std::move(parallel_classes);
    for (std::size_t c = 0; c < parallel_classes_.size(); ++c) {
      for (LineId l : parallel_classes_[c]) {
        if (l < 0 || l >= num_lines()) {
          throw PlaneError(PlaneErrorCode::InvalidLineId,
                           "class " + std::to_string(c) + " names unknown line " +
                               std::to_string(l));
        }
        auto& slot = class_of_[static_cast<std::size_t>(l)];
        if (slot == kNone) slot = static_cast<int>(c);
      }
    }
  }

  if (num_points_ <= kEagerPairTableMaxPoints && num_points_ >= 2) {
    const auto n = static_cast<std::size_t>(num_points_);
    pair_table_.assign(n * (n - 1) / 2, kNone);
    for (std::size_t l = 0; l < lines_.size(); ++l) {
      const auto& pts = lines_[l];
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          auto& slot = pair_table_[pair_index(num_points_, pts[i], pts[j])];
          if (slot == kNone) slot = static_cast<LineId>(l);
        }
      }
    }
  }

  digest_ = sha256_hex(canonical_text(*this));
}

void Plane::check_point(PointId p) const {
  if (p < 0 || p >= num_points_) {
    throw PlaneError(PlaneErrorCode::InvalidPoint, "no point " + std::to_string(p));
  }
}

void Plane::check_line(LineId l) const {
  if (l < 0 || l >= num_lines()) {
    throw PlaneError(PlaneErrorCode::InvalidLineId, "no line " + std::to_string(l));
  }
}

std::span<const PointId> Plane::points_on(LineId l) const {
  check_line(l);
  return lines_[static_cast<std::size_t>(l)];
}

std::span<const LineId> Plane::lines_through(PointId p) const {
  check_point(p);
  return point_lines_[static_cast<std::size_t>(p)];
}

bool Plane::incident(PointId p, LineId l) const {
  if (p < 0 || p >= num_points_ || l < 0 || l >= num_lines()) return false;
  const auto& pts = lines_[static_cast<std::size_t>(l)];
  return std::binary_search(pts.begin(), pts.end(), p);
}

int Plane::class_of(LineId l) const {
  check_line(l);
  return class_of_[static_cast<std::size_t>(l)];
}

LineId Plane::line_through(PointId a, PointId b) const {
  check_point(a);
  check_point(b);
  if (a == b) return kNone;
  if (!pair_table_.empty()) return pair_table_[pair_index(num_points_, a, b)];
  const auto& la = point_lines_[static_cast<std::size_t>(a)];
  const auto& lb = point_lines_[static_cast<std::size_t>(b)];
  auto i = la.begin();
  auto j = lb.begin();
  while (i != la.end() && j != lb.end()) {
    if (*i == *j) return *i;
    if (*i < *j) ++i; else ++j;
  }
  return kNone;
}

LineId Plane::join(PointId a, PointId b) const {
  if (a == b) {
    throw PlaneError(PlaneErrorCode::SamePoint, "join of point " + std::to_string(a) + " with itself");
  }
  const LineId l = line_through(a, b);
  if (l == kNone) {
    throw PlaneError(PlaneErrorCode::NoCommonLine,
                     "points " + std::to_string(a) + " and " + std::to_string(b) + " share no line");
  }
  return l;
}

std::optional<PointId> Plane::meet(LineId l, LineId m) const {
  check_line(l);
  check_line(m);
  if (l == m) {
    throw PlaneError(PlaneErrorCode::SameLine, "meet of line " + std::to_string(l) + " with itself");
  }
  const auto& a = lines_[static_cast<std::size_t>(l)];
  const auto& b = lines_[static_cast<std::size_t>(m)];
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return *i;
    if (*i < *j) ++i; else ++j;
  }
  return std::nullopt;
}

LineId Plane::parallel_through_class(int parallel_class, PointId q) const {
  if (kind_ != PlaneKind::affine) {
    throw PlaneError(PlaneErrorCode::WrongKind, "parallel_through needs an affine plane");
  }
  check_point(q);
  for (LineId l : point_lines_[static_cast<std::size_t>(q)]) {
    if (class_of_[static_cast<std::size_t>(l)] == parallel_class) return l;
  }
  throw PlaneError(PlaneErrorCode::InvalidAffine,
                   "no line of class " + std::to_string(parallel_class) + " through point " +
                       std::to_string(q));
}

LineId Plane::parallel_through(LineId l, PointId q) const {
  return parallel_through_class(class_of(l), q);
}

// ---------------------------------------------------------------------------
// Axioms

std::vector<AxiomViolation> find_axiom_violations(const Plane& plane, std::size_t limit) {
  std::vector<AxiomViolation> out;
  auto full = [&] { return out.size() >= limit; };
  const int q = plane.order();
  const int num_points = plane.num_points();
  const int num_lines = plane.num_lines();

  for (LineId l = 0; l < num_lines && !full(); ++l) {
    if (plane.points_on(l).size() < 2) {
      out.emplace_back("line-has-two-points",
                       std::vector<PointId>(plane.points_on(l).begin(), plane.points_on(l).end()),
                       std::vector<LineId>{l}, "line " + std::to_string(l) + " has fewer than 2 points");
    }
  }

  // Two distinct points on at most one line.
  {
    std::vector<PointId> seen_by(static_cast<std::size_t>(num_points), kNone);
    std::vector<LineId> seen_on(static_cast<std::size_t>(num_points), kNone);
    for (PointId p = 0; p < num_points && !full(); ++p) {
      for (LineId l : plane.lines_through(p)) {
        for (PointId r : plane.points_on(l)) {
          if (r == p) continue;
          auto idx = static_cast<std::size_t>(r);
          if (seen_by[idx] == p && r > p) {
            out.emplace_back("two-points-one-line", std::vector<PointId>{p, r},
                             std::vector<LineId>{seen_on[idx], l},
                             "points share more than one line");
            if (full()) break;
          }
          seen_by[idx] = p;
          seen_on[idx] = l;
        }
        if (full()) break;
      }
    }
  }
  if (plane.kind() == PlaneKind::partial || full()) return out;

  if (q < 2) {
    out.emplace_back("order", std::vector<PointId>{}, std::vector<LineId>{},
                     "order must be at least 2, got " + std::to_string(q));
    return out;
  }

  const bool affine = plane.kind() == PlaneKind::affine;
  const long long want_points = affine ? 1LL * q * q : plane.n_q();
  const long long want_lines = affine ? 1LL * q * q + q : plane.n_q();
  const std::size_t line_size = affine ? static_cast<std::size_t>(q) : static_cast<std::size_t>(q) + 1;
  const std::size_t degree = static_cast<std::size_t>(q) + 1;

  if (num_points != want_points) {
    out.emplace_back("point-count", std::vector<PointId>{}, std::vector<LineId>{},
                     "expected " + std::to_string(want_points) + " points, found " +
                         std::to_string(num_points));
  }
  if (num_lines != want_lines) {
    out.emplace_back("line-count", std::vector<PointId>{}, std::vector<LineId>{},
                     "expected " + std::to_string(want_lines) + " lines, found " +
                         std::to_string(num_lines));
  }
  for (LineId l = 0; l < num_lines && !full(); ++l) {
    if (plane.points_on(l).size() != line_size) {
      out.emplace_back("line-size", std::vector<PointId>{}, std::vector<LineId>{l},
                       "line has " + std::to_string(plane.points_on(l).size()) + " points, expected " +
                           std::to_string(line_size));
    }
  }
  for (PointId p = 0; p < num_points && !full(); ++p) {
    if (plane.lines_through(p).size() != degree) {
      out.emplace_back("point-degree", std::vector<PointId>{p}, std::vector<LineId>{},
                       "point is on " + std::to_string(plane.lines_through(p).size()) +
                           " lines, expected " + std::to_string(degree));
    }
  }
  if (full() || !out.empty()) return out;

  if (affine) {
    const auto& classes = plane.parallel_classes();
    if (classes.size() != degree) {
      out.emplace_back("class-count", std::vector<PointId>{}, std::vector<LineId>{},
                       "expected " + std::to_string(degree) + " parallel classes, found " +
                           std::to_string(classes.size()));
      return out;
    }
    std::vector<int> owner(static_cast<std::size_t>(num_lines), kNone);
    for (std::size_t c = 0; c < classes.size() && !full(); ++c) {
      if (classes[c].size() != static_cast<std::size_t>(q)) {
        out.emplace_back("class-size", std::vector<PointId>{}, classes[c],
                         "class " + std::to_string(c) + " has " + std::to_string(classes[c].size()) +
                             " lines, expected " + std::to_string(q));
      }
      for (LineId l : classes[c]) {
        auto& o = owner[static_cast<std::size_t>(l)];
        if (o != kNone) {
          out.emplace_back("class-partition", std::vector<PointId>{}, std::vector<LineId>{l},
                           "line is in classes " + std::to_string(o) + " and " + std::to_string(c));
        }
        o = static_cast<int>(c);
      }
      // Lines of one class are pairwise disjoint.
      std::vector<LineId> cover(static_cast<std::size_t>(num_points), kNone);
      for (LineId l : classes[c]) {
        for (PointId p : plane.points_on(l)) {
          auto& slot = cover[static_cast<std::size_t>(p)];
          if (slot != kNone) {
            out.emplace_back("parallel-disjoint", std::vector<PointId>{p},
                             std::vector<LineId>{slot, l},
                             "lines of class " + std::to_string(c) + " meet");
          }
          slot = l;
        }
      }
    }
    for (LineId l = 0; l < num_lines && !full(); ++l) {
      if (owner[static_cast<std::size_t>(l)] == kNone) {
        out.emplace_back("class-partition", std::vector<PointId>{}, std::vector<LineId>{l},
                         "line belongs to no parallel class");
      }
    }
    return out;
  }

  // Projective: four points, no three collinear. Counting plus the partial
  // axiom already force every pair of points onto a line.
  bool found = false;
  for (PointId a = 0; a < num_points && !found; ++a) {
    for (PointId b = a + 1; b < num_points && !found; ++b) {
      const LineId ab = plane.line_through(a, b);
      for (PointId c = b + 1; c < num_points && !found; ++c) {
        if (plane.incident(c, ab)) continue;
        const LineId ac = plane.line_through(a, c);
        const LineId bc = plane.line_through(b, c);
        for (PointId d = c + 1; d < num_points; ++d) {
          if (!plane.incident(d, ab) && !plane.incident(d, ac) && !plane.incident(d, bc)) {
            found = true;
            break;
          }
        }
      }
    }
  }
  if (!found) {
    out.emplace_back("quadrangle", std::vector<PointId>{}, std::vector<LineId>{},
                     "no four points with no three collinear");
  }
  return out;
}

void validate_plane(const Plane& plane) {
  auto violations = find_axiom_violations(plane, 1);
  if (!violations.empty()) throw violations.front();
}

// ---------------------------------------------------------------------------
// Classical planes

Plane build_affine_classical(const FieldSpec& field) {
  const auto q = static_cast<int>(field.q());
  if (q > kMaxPlaneOrder) {
    throw PlaneError(PlaneErrorCode::OrderTooLarge, "plane order " + std::to_string(q) + " too large");
  }
  auto point_id = [q](std::uint32_t x, std::uint32_t y) {
    return static_cast<PointId>(x * static_cast<std::uint32_t>(q) + y);
  };
  std::vector<std::vector<PointId>> lines;
  std::vector<std::vector<LineId>> classes(static_cast<std::size_t>(q) + 1);
  lines.reserve(static_cast<std::size_t>(q) * q + q);
  // y = m x + b, numbered m*q + b, then x = c.
  for (FieldElement m : field.elements()) {
    for (FieldElement b : field.elements()) {
      std::vector<PointId> pts;
      for (FieldElement x : field.elements()) {
        pts.push_back(point_id(x.index, field.add(field.mul(m, x), b).index));
      }
      classes[m.index].push_back(static_cast<LineId>(lines.size()));
      lines.push_back(std::move(pts));
    }
  }
  for (FieldElement c : field.elements()) {
    std::vector<PointId> pts;
    for (FieldElement y : field.elements()) pts.push_back(point_id(c.index, y.index));
    classes[static_cast<std::size_t>(q)].push_back(static_cast<LineId>(lines.size()));
    lines.push_back(std::move(pts));
  }
  std::vector<std::string> labels;
  for (FieldElement x : field.elements()) {
    for (FieldElement y : field.elements()) {
      labels.push_back("(" + std::to_string(x.index) + "," + std::to_string(y.index) + ")");
    }
  }
  return Plane(PlaneKind::affine, q, q * q, std::move(lines), std::move(classes), std::move(labels));
}

Plane build_projective_classical(const FieldSpec& field) {
  const auto q = field.q();
  if (q > kMaxPlaneOrder) {
    throw PlaneError(PlaneErrorCode::OrderTooLarge, "plane order " + std::to_string(q) + " too large");
  }
  using Vec = std::array<FieldElement, 3>;
  // Normalised representatives in lexicographic order: (0,0,1), (0,1,c), (1,b,c).
  std::vector<Vec> reps;
  reps.push_back({field.zero(), field.zero(), field.one()});
  for (FieldElement c : field.elements()) reps.push_back({field.zero(), field.one(), c});
  for (FieldElement b : field.elements()) {
    for (FieldElement c : field.elements()) reps.push_back({field.one(), b, c});
  }
  auto id_of = [&](Vec v) -> PointId {
    std::size_t lead = 0;
    while (v[lead].index == 0) ++lead;
    const FieldElement s = field.inv(v[lead]);
    for (auto& x : v) x = field.mul(x, s);
    if (lead == 2) return 0;
    if (lead == 1) return static_cast<PointId>(1 + v[2].index);
    return static_cast<PointId>(1 + q + v[1].index * q + v[2].index);
  };
  auto combine = [&](const Vec& u, FieldElement s, const Vec& v, FieldElement t) {
    Vec out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = field.add(field.mul(s, u[i]), field.mul(t, v[i]));
    return out;
  };

  std::vector<std::vector<PointId>> lines;
  lines.reserve(reps.size());
  const FieldElement zero = field.zero(), one = field.one();
  for (const Vec& l : reps) {
    // Two vectors spanning the kernel of x -> l . x.
    Vec u, v;
    if (l[0] == one) {
      u = {field.neg(l[1]), one, zero};
      v = {field.neg(l[2]), zero, one};
    } else if (l[1] == one) {
      u = {one, zero, zero};
      v = {zero, field.neg(l[2]), one};
    } else {
      u = {one, zero, zero};
      v = {zero, one, zero};
    }
    std::vector<PointId> pts;
    pts.push_back(id_of(u));
    for (FieldElement t : field.elements()) pts.push_back(id_of(combine(u, t, v, one)));
    lines.push_back(std::move(pts));
  }
  std::vector<std::string> labels;
  for (const Vec& r : reps) {
    labels.push_back("(" + std::to_string(r[0].index) + ":" + std::to_string(r[1].index) + ":" +
                     std::to_string(r[2].index) + ")");
  }
  return Plane(PlaneKind::projective, static_cast<int>(q), static_cast<int>(reps.size()),
               std::move(lines), {}, std::move(labels));
}

// ---------------------------------------------------------------------------
// Conversions

ProjectiveCompletion projective_from_affine(const Plane& affine) {
  if (affine.kind() != PlaneKind::affine) {
    throw PlaneError(PlaneErrorCode::InvalidAffine, "plane is not affine");
  }
  if (auto v = find_axiom_violations(affine, 1); !v.empty()) {
    throw PlaneError(PlaneErrorCode::InvalidAffine, v.front().what());
  }
  const int base = affine.num_points();
  const auto& classes = affine.parallel_classes();
  std::vector<std::vector<PointId>> lines = affine.lines();
  ProjectiveCompletion out{Plane(PlaneKind::partial, 0, 0, {}), kNone, {}};
  std::vector<PointId> infinity;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto ideal = static_cast<PointId>(base + static_cast<int>(c));
    for (LineId l : classes[c]) lines[static_cast<std::size_t>(l)].push_back(ideal);
    infinity.push_back(ideal);
  }
  out.class_to_point = infinity;
  out.line_at_infinity = static_cast<LineId>(lines.size());
  lines.push_back(std::move(infinity));

  std::vector<std::string> labels = affine.point_labels();
  if (!labels.empty()) {
    for (std::size_t c = 0; c < classes.size(); ++c) labels.push_back("(inf " + std::to_string(c) + ")");
  }
  out.plane = Plane(PlaneKind::projective, affine.order(), base + static_cast<int>(classes.size()),
                    std::move(lines), {}, std::move(labels));
  return out;
}

AffineRestriction affine_from_projective(const Plane& projective, LineId l) {
  if (projective.kind() != PlaneKind::projective) {
    throw PlaneError(PlaneErrorCode::InvalidProjective, "plane is not projective");
  }
  projective.check_line(l);
  const auto removed = projective.points_on(l);
  std::vector<PointId> new_id(static_cast<std::size_t>(projective.num_points()), kNone);

  AffineRestriction out{Plane(PlaneKind::partial, 0, 0, {}), {}, {}, {}, l};
  out.class_to_point.assign(removed.begin(), removed.end());
  for (PointId p = 0; p < projective.num_points(); ++p) {
    if (std::binary_search(removed.begin(), removed.end(), p)) continue;
    new_id[static_cast<std::size_t>(p)] = static_cast<PointId>(out.point_to_projective.size());
    out.point_to_projective.push_back(p);
  }

  std::vector<std::vector<PointId>> lines;
  std::vector<std::vector<LineId>> classes(removed.size());
  for (LineId m = 0; m < projective.num_lines(); ++m) {
    if (m == l) continue;
    std::vector<PointId> pts;
    for (PointId p : projective.points_on(m)) {
      if (new_id[static_cast<std::size_t>(p)] != kNone) {
        pts.push_back(new_id[static_cast<std::size_t>(p)]);
      } else {
        auto it = std::lower_bound(removed.begin(), removed.end(), p);
        classes[static_cast<std::size_t>(it - removed.begin())].push_back(
            static_cast<LineId>(lines.size()));
      }
    }
    out.line_to_projective.push_back(m);
    lines.push_back(std::move(pts));
  }

  std::vector<std::string> labels;
  if (!projective.point_labels().empty()) {
    for (PointId p : out.point_to_projective) {
      labels.push_back(projective.point_labels()[static_cast<std::size_t>(p)]);
    }
  }
  out.plane = Plane(PlaneKind::affine, projective.order(),
                    static_cast<int>(out.point_to_projective.size()), std::move(lines),
                    std::move(classes), std::move(labels));
  return out;
}

}  // namespace planecycles
