#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hphs/geom.hpp"

namespace hphs {

// Circle positions are 0-based throughout: position i is the (i+1)-th point
// counterclockwise from direction (1,0).

/// Half-planes sorted counterclockwise by normal direction.
struct CirclePoints {
  std::vector<HalfPlane> order;
  std::vector<int> pos_of;  // half-plane id -> circle position, -1 if absent

  int size() const { return static_cast<int>(order.size()); }
};

/// Precondition: pairwise distinct normal directions (see dedup_halfplanes).
CirclePoints build_circle_points(std::span<const HalfPlane> deduped);

/// Bit i set iff the point hits the defining half-plane of circle position i.
struct HitRow {
  int point_id = 0;
  int length = 0;
  std::vector<std::uint64_t> words;

  bool test(int i) const { return (words[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u; }
  void set(int i) { words[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }
  int count() const;
};

/// One row per point, in point order.
std::vector<HitRow> hit_rows(std::span<const WeightedPoint> points, const CirclePoints& circle);

/// Maximal cyclic run [start..end] of a point's 1-bits, inclusive.
struct Arc {
  int point_id = 0;
  int start = 0;
  int end = 0;
  int circle_size = 0;
  Weight weight = 0;

  bool full() const { return start == 0 && end == circle_size - 1; }
  int length() const { return full() ? circle_size : (end - start + circle_size) % circle_size + 1; }
  bool covers(int i) const {
    return full() || (start <= end ? (start <= i && i <= end) : (i >= start || i <= end));
  }
  /// True if every circle position covered by other is covered by this.
  bool contains(const Arc& other) const;
};

/// Runs ordered by start position. All-ones gives the single full arc.
std::vector<Arc> arcs_of(const HitRow& row, Weight weight);

struct BStar {
  int index = 0;
  int kappa = 0;
};

/// Circle position hit by the fewest points; ties go to the smallest position.
BStar select_bstar(std::span<const HitRow> rows, int circle_size);

/// The arc containing bstar for every point hitting its half-plane, in point order.
std::vector<Arc> candidate_arcs(std::span<const HitRow> rows, std::span<const WeightedPoint> points,
                                int bstar);

/// The per-arc subproblem: half-planes not covered by alpha, listed from the
/// first uncovered position after alpha's end around to the one before its start.
struct CandidateInstance {
  Arc alpha;
  int p_alpha = 0;
  std::vector<HalfPlane> hseq;
  std::vector<int> hseq_pos;  // circle position of each hseq entry
  std::vector<int> pids;      // every point id except p_alpha, ascending
};

CandidateInstance build_instance(const Arc& alpha, const CirclePoints& circle, int point_count);

}  // namespace hphs
