#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "planecycles/cycle.hpp"
#include "planecycles/plane.hpp"
#include "planecycles/verification.hpp"

namespace planecycles {

/// Distinguished point O of an affine plane with its pencil l_0..l_q.
struct Frame {
  int q = 0;
  PointId origin = kNone;
  /// pencil[j] is l_j.
  std::vector<LineId> pencil;
  /// pencil_class[j] is the parallel class of l_j.
  std::vector<int> pencil_class;

  int modulus() const noexcept { return q + 1; }
  int wrap(int level) const noexcept { return ((level % (q + 1)) + (q + 1)) % (q + 1); }
  LineId line(int level) const { return pencil[static_cast<std::size_t>(wrap(level))]; }
  int line_class(int level) const { return pencil_class[static_cast<std::size_t>(wrap(level))]; }
  /// Pencil index of the line through O and p (p != O).
  int level_of(const Plane& plane, PointId p) const;
};

/// O defaults to point 0; the pencil is the lines through O in ascending id.
Frame choose_frame(const Plane& plane, std::optional<PointId> origin = std::nullopt);
/// Same frame but with an explicit pencil order (a permutation of the lines through O).
Frame choose_frame(const Plane& plane, PointId origin, std::vector<LineId> pencil);

/// The q+1 point path from start ∈ l_0 \ {O}: vertex i lies on l_i and the
/// edge into it is the line of class l_{i+1} through vertex i-1.
Path base_path(const Plane& plane, const Frame& frame, PointId start);

enum class Direction { positive, negative };

/// One cycle C_i of the partition of the punctured plane. Points are stored
/// in positive order starting on l_0, so the point at position j sits on
/// pencil line l_{j mod (q+1)}.
struct StructuredCycle {
  int index = 0;  // 1-based after sorting
  int t = 0;      // length is t*(q+1)
  std::vector<PointId> points;
  /// lines[j] joins points[j] and points[j+1 mod n].
  std::vector<LineId> lines;
  std::size_t entry_prev = 0;  // position of P_{i,i-1}
  std::size_t entry_next = 0;  // position of P_{i,i}

  std::size_t size() const noexcept { return points.size(); }
  std::size_t wrap(std::ptrdiff_t pos) const noexcept {
    const auto n = static_cast<std::ptrdiff_t>(points.size());
    return static_cast<std::size_t>(((pos % n) + n) % n);
  }
  PointId at(std::ptrdiff_t pos) const noexcept { return points[wrap(pos)]; }
  int level_at(std::ptrdiff_t pos, int q) const noexcept {
    return static_cast<int>(wrap(pos) % static_cast<std::size_t>(q + 1));
  }
  std::optional<std::size_t> position_of(PointId p) const;
  /// Line between positions pos and pos+1.
  LineId line_after(std::ptrdiff_t pos) const noexcept { return lines[wrap(pos)]; }
  /// Positions whose point lies on l_level, ascending.
  std::vector<std::size_t> positions_on_level(int level, int q) const;
};

struct CyclePartition {
  Frame frame;
  std::vector<StructuredCycle> cycles;  // C_1..C_s, t ascending
  /// lambda[m] = t_1 + ... + t_m, lambda[0] = 0.
  std::vector<int> lambda;

  int s() const noexcept { return static_cast<int>(cycles.size()); }
  int q() const noexcept { return frame.q; }
  /// C_i, 1-based.
  const StructuredCycle& cycle(int i) const { return cycles.at(static_cast<std::size_t>(i - 1)); }
  PointId entry_prev(int i) const { return cycle(i).points[cycle(i).entry_prev]; }
  PointId entry_next(int i) const { return cycle(i).points[cycle(i).entry_next]; }
};

/// Chains base paths through lines of class l_1 into cycles and sorts them
/// by length (ties by first point). Entry point P_{i,i-1} is the least point
/// of C_i on l_{i-1}, or a uniformly random one when `rng` is given.
CyclePartition cycle_partition(const Plane& plane, const Frame& frame, std::mt19937_64* rng = nullptr);

/// v vertices walked along the cycle from `start`. Positive walks towards the
/// next pencil level.
Path directed_subpath(const StructuredCycle& cycle, PointId start, Direction direction, std::size_t v);

struct Spine {
  int m = 0;
  std::optional<int> skip_t;
  bool cut_first = false;
  Path path;
  /// Neighbour of P_{1,0} on the spine (on l_q).
  PointId second_vertex = kNone;
};

/// Path through C_1..C_m joined by pencil lines. Plain: P_{1,0} ... P_{m,m}
/// using l_1..l_{m-1}. With skip_t = t the junctions from C_t on move to
/// l_{t+1}..l_m, P_{t,t} is left out and the path ends on l_{m+1}, ready to
/// be joined to C_{m+1}. cut_first drops P_{1,0}.
Spine build_spine(const CyclePartition& partition, int m, std::optional<int> skip_t = std::nullopt,
                  bool cut_first = false);

struct EmbedOptions {
  /// Orders 2 and 3 are handled by exhaustive search instead of construction.
  bool search_small_orders = true;
  std::uint64_t search_budget = kDefaultSearchBudget;
  /// Randomises O, the pencil order, entry points (and, for projective
  /// planes, the line at infinity and anchors).
  std::optional<std::uint64_t> seed;
};

struct Embedding {
  EmbeddedCycle cycle;
  /// Which construction produced the cycle.
  std::string branch;
  VerificationReport report;
};

/// Frame and cycle partition of one affine plane, reused across k.
class AffineEmbedder {
 public:
  explicit AffineEmbedder(const Plane& plane, EmbedOptions options = {});
  /// Uses a prepared frame and partition (the projective embedder shares them).
  AffineEmbedder(const Plane& plane, CyclePartition partition, EmbedOptions options = {});

  const Plane& plane() const noexcept { return plane_; }
  const CyclePartition& partition() const noexcept { return partition_; }

  /// A verified k-cycle, 3 <= k <= q^2.
  Embedding embed(int k) const;

 private:
  std::optional<EmbeddedCycle> short_cycle(int k, std::string& branch) const;
  std::optional<EmbeddedCycle> spine_cycle(int k, std::string& branch) const;
  std::optional<EmbeddedCycle> attach(int m, bool cut, Direction dir, std::size_t v) const;
  std::optional<EmbeddedCycle> rerouted(int m, int r) const;
  bool accept(const std::optional<EmbeddedCycle>& c) const;

  const Plane& plane_;
  EmbedOptions options_;
  CyclePartition partition_;
};

Embedding embed_affine_cycle(const Plane& plane, int k, EmbedOptions options = {});

}  // namespace planecycles
