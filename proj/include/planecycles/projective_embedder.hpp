#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "planecycles/affine_embedder.hpp"
#include "planecycles/cycle.hpp"
#include "planecycles/plane.hpp"

namespace planecycles {

/// A projective plane seen as an affine plane plus the line at infinity.
/// All ids below are projective ids unless a member says otherwise.
struct ProjectiveContext {
  const Plane* plane = nullptr;
  LineId line_at_infinity = kNone;
  std::shared_ptr<const AffineRestriction> restriction;
  /// Frame and partition of the affine restriction (affine ids).
  CyclePartition partition;

  PointId origin = kNone;
  /// pencil[i] is l_i.
  std::vector<LineId> pencil;
  /// infinite_points[i] is (i), the point where l_i meets the line at infinity.
  std::vector<PointId> infinite_points;
  /// C_1..C_s translated to projective ids; positions and levels unchanged.
  std::vector<StructuredCycle> cycles;

  int q() const noexcept { return partition.q(); }
  int s() const noexcept { return partition.s(); }
  LineId line(int level) const { return pencil[static_cast<std::size_t>(partition.frame.wrap(level))]; }
  PointId at_infinity(int level) const {
    return infinite_points[static_cast<std::size_t>(partition.frame.wrap(level))];
  }
  const StructuredCycle& cycle(int i) const { return cycles.at(static_cast<std::size_t>(i - 1)); }
  PointId to_projective(PointId affine) const;
  LineId line_to_projective(LineId affine) const;
};

/// The line at infinity defaults to the greatest line id. A seed randomises
/// it together with O, the pencil order and the entry points.
ProjectiveContext make_context(const Plane& plane, std::optional<LineId> line_at_infinity = std::nullopt,
                               std::optional<std::uint64_t> seed = std::nullopt);

struct Anchor {
  int index = 0;
  PointId w = kNone;  // on l_{i-2} (l_q for i = 1)
  PointId v = kNone;  // positive neighbour of w, on l_{i-1}
  PointId u = kNone;  // first l_q point after v
  LineId edge = kNone;  // l_i + W_i, joins v and w
  /// V_i to W_i the long way round C_i.
  Path long_path;
  /// First q-i+2 vertices of long_path, V_i .. U_i.
  Path prefix;
};

struct AnchorSet {
  std::vector<Anchor> anchors;
  const Anchor& at(int i) const { return anchors.at(static_cast<std::size_t>(i - 1)); }
};

/// W_i is the least eligible point, or a random one under `seed`.
AnchorSet select_anchors(const ProjectiveContext& ctx, std::optional<std::uint64_t> seed = std::nullopt);

struct Resources {
  std::set<PointId> points;
  std::set<LineId> lines;
  friend bool operator==(const Resources&, const Resources&) = default;
};

/// Points and lines of the plane that a path or cycle does not use.
Resources unused_resources(const Plane& plane, const Path& path);
Resources unused_resources(const Plane& plane, const EmbeddedCycle& cycle);

struct InfinityPath {
  /// V_1 .. W_s, threading (1)..(s-1) between consecutive cycles.
  Path path;
  Resources unused;
};

InfinityPath build_infinity_path(const ProjectiveContext& ctx, const AnchorSet& anchors);

// The cycle families built on P. Each is a valid cycle for any parameter in
// range, whether or not the dispatcher would pick it for that length.

/// P closed through (s) and (0), with O and (q) inserted for extra = 2, and
/// (q), O for extra = 1. Length q^2+s+extra.
EmbeddedCycle closure_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, int extra);
/// The extra = 0 closure minus V_i .. U_i (U_i kept), rejoined through O.
/// Length q^2-q+s+i for 2 <= i <= s.
EmbeddedCycle truncation_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, int i);
/// The extra = 0 closure with P_{s-1} .. P_{q-2} replaced by O. Length q^2-q+2s+1.
EmbeddedCycle bridge_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors);
/// The extra = 0 closure with P_{i+1} .. P_{q-1} replaced by O. Length
/// q^2+s-q+i+2 for s <= i <= q-1.
EmbeddedCycle tail_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, int i);

/// Lengths q^2+1 .. q^2+s+2: closures first, then truncation (only when
/// q+1 <= 2s), bridge and tail.
EmbeddedCycle closure_range_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, int k,
                            std::string* branch = nullptr);

/// The ladder G_j closed through (0) and (s): length q^2+s+j, 1 <= j <= q-s.
/// Requires s < q-1.
EmbeddedCycle ladder_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, int j);

/// Lengths q^2+s+1 .. q^2+q+1 (the top one is Hamiltonian). Requires s < q-1.
EmbeddedCycle ladder_range_cycle(const ProjectiveContext& ctx, const AnchorSet& anchors, int k,
                            std::string* branch = nullptr);

class ProjectiveEmbedder {
 public:
  explicit ProjectiveEmbedder(const Plane& plane, EmbedOptions options = {},
                              std::optional<LineId> line_at_infinity = std::nullopt);

  const ProjectiveContext& context() const noexcept { return ctx_; }
  const AnchorSet& anchors() const noexcept { return anchors_; }

  /// A verified k-cycle, 3 <= k <= q^2+q+1.
  Embedding embed(int k) const;

 private:
  const Plane* plane_;
  EmbedOptions options_;
  ProjectiveContext ctx_;
  AnchorSet anchors_;
  std::unique_ptr<AffineEmbedder> affine_;
};

Embedding embed_projective_cycle(const Plane& plane, int k, EmbedOptions options = {});

}  // namespace planecycles
