#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "planecycles/galois_field.hpp"

namespace planecycles {

using PointId = std::int32_t;
using LineId = std::int32_t;

inline constexpr std::int32_t kNone = -1;

enum class PlaneKind { partial, affine, projective };

std::string_view to_string(PlaneKind kind);
std::optional<PlaneKind> parse_plane_kind(std::string_view text);

enum class PlaneErrorCode {
  OrderTooLarge,
  InvalidAffine,
  InvalidProjective,
  InvalidLineId,
  InvalidPoint,
  NoCommonLine,
  SamePoint,
  SameLine,
  WrongKind,
  Malformed,
};

class PlaneError : public std::runtime_error {
 public:
  PlaneError(PlaneErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  PlaneErrorCode code() const noexcept { return code_; }

 private:
  PlaneErrorCode code_;
};

/// A named axiom failure plus the point/line ids that witness it.
class AxiomViolation : public std::runtime_error {
 public:
  AxiomViolation(std::string axiom, std::vector<PointId> points, std::vector<LineId> lines,
                 const std::string& detail);
  const std::string& axiom() const noexcept { return axiom_; }
  const std::vector<PointId>& witness_points() const noexcept { return points_; }
  const std::vector<LineId>& witness_lines() const noexcept { return lines_; }

 private:
  std::string axiom_;
  std::vector<PointId> points_;
  std::vector<LineId> lines_;
};

/// Finite incidence structure: points 0..P-1, lines as sorted point sets.
///
/// A Plane is immutable after construction. Construction only checks that
/// ids are in range and lines are duplicate free; the geometric axioms for
/// the declared kind are checked by validate_plane().
class Plane {
 public:
  /// `parallel_classes` is required for the affine kind and ignored otherwise.
  Plane(PlaneKind kind, int order, int num_points, std::vector<std::vector<PointId>> lines,
        std::vector<std::vector<LineId>> parallel_classes = {},
        std::vector<std::string> point_labels = {});

  PlaneKind kind() const noexcept { return kind_; }
  int order() const noexcept { return order_; }
  /// q^2 + q + 1.
  long long n_q() const noexcept {
    return static_cast<long long>(order_) * order_ + order_ + 1;
  }
  int num_points() const noexcept { return num_points_; }
  int num_lines() const noexcept { return static_cast<int>(lines_.size()); }

  std::span<const PointId> points_on(LineId l) const;
  std::span<const LineId> lines_through(PointId p) const;
  bool incident(PointId p, LineId l) const;

  const std::vector<std::vector<PointId>>& lines() const noexcept { return lines_; }
  const std::vector<std::vector<LineId>>& parallel_classes() const noexcept {
    return parallel_classes_;
  }
  /// Parallel class index of an affine line, kNone otherwise.
  int class_of(LineId l) const;
  const std::vector<std::string>& point_labels() const noexcept { return labels_; }

  /// Line through two distinct points, or kNone when they share no line.
  LineId line_through(PointId a, PointId b) const;
  /// Like line_through but throws NoCommonLine / SamePoint.
  LineId join(PointId a, PointId b) const;
  /// Common point of two distinct lines, or nullopt if they are disjoint.
  std::optional<PointId> meet(LineId l, LineId m) const;
  /// Line of the given parallel class through q (affine only).
  LineId parallel_through_class(int parallel_class, PointId q) const;
  /// Line parallel to `l` through q (affine only).
  LineId parallel_through(LineId l, PointId q) const;

  /// SHA-256 hex digest of the canonical plane file.
  const std::string& digest() const noexcept { return digest_; }

  void check_point(PointId p) const;
  void check_line(LineId l) const;

 private:
  PlaneKind kind_;
  int order_;
  int num_points_;
  std::vector<std::vector<PointId>> lines_;
  std::vector<std::vector<LineId>> point_lines_;
  std::vector<std::vector<LineId>> parallel_classes_;
  std::vector<int> class_of_;
  std::vector<std::string> labels_;
  // Upper-triangular pair -> line table; empty when the plane is too large
  // and joins fall back to merging the two incidence lists.
  std::vector<LineId> pair_table_;
  std::string digest_;
};

/// Ceiling for the eager pair -> line table, in points (q = 64 projective).
inline constexpr int kEagerPairTableMaxPoints = 64 * 64 + 64 + 1;

/// Throws AxiomViolation naming the first violated axiom for the plane's kind.
void validate_plane(const Plane& plane);

/// Every axiom violation found (empty when valid). Stops after `limit` entries.
std::vector<AxiomViolation> find_axiom_violations(const Plane& plane, std::size_t limit = 16);

// Classical constructions over a field.
Plane build_affine_classical(const FieldSpec& field);
Plane build_projective_classical(const FieldSpec& field);

struct ProjectiveCompletion {
  Plane plane;
  LineId line_at_infinity = kNone;
  /// Parallel class index -> its new point on the line at infinity.
  std::vector<PointId> class_to_point;
};

/// Adds one point per parallel class and the line at infinity through them.
/// Affine point/line ids are preserved; new points and the new line come last.
ProjectiveCompletion projective_from_affine(const Plane& affine);

struct AffineRestriction {
  Plane plane;
  /// Affine id -> projective id.
  std::vector<PointId> point_to_projective;
  std::vector<LineId> line_to_projective;
  /// Parallel class index -> removed point, ascending.
  std::vector<PointId> class_to_point;
  LineId removed_line = kNone;
};

/// Removes line `l` and its points. Survivors keep their relative order; the
/// parallel classes are indexed by the removed points in ascending order.
AffineRestriction affine_from_projective(const Plane& projective, LineId l);

}  // namespace planecycles
