#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "hphs/types.hpp"

namespace hphs {

struct WeightedPoint {
  int id = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
  Weight w = 1;
};

/// Closed region { (x,y) : a*x + b*y >= c }. The inward normal is (a,b).
struct HalfPlane {
  int id = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
};

enum class Sidedness { Inside, Boundary, Outside };

/// Exact value of a*x + b*y - c.
inline Int128 evaluate(const HalfPlane& h, std::int64_t x, std::int64_t y) {
  return Int128{h.a} * x + Int128{h.b} * y - Int128{h.c};
}

inline Sidedness side_of(const HalfPlane& h, const WeightedPoint& p) {
  const Int128 v = evaluate(h, p.x, p.y);
  if (v > 0) return Sidedness::Inside;
  if (v == 0) return Sidedness::Boundary;
  return Sidedness::Outside;
}

/// Boundary counts as a hit.
inline bool hits(const WeightedPoint& p, const HalfPlane& h) {
  return evaluate(h, p.x, p.y) >= 0;
}

/// Counterclockwise angular order of normal directions, starting at (1,0).
/// Positive multiples of one direction compare equivalent.
std::weak_ordering compare_normals(const HalfPlane& h1, const HalfPlane& h2);

inline bool same_direction(const HalfPlane& h1, const HalfPlane& h2) {
  return compare_normals(h1, h2) == 0;
}

struct DedupResult {
  std::vector<HalfPlane> kept;     // pairwise distinct normal directions
  std::vector<HalfPlane> dropped;  // each contains the kept one of equal direction
};

/// Keeps, per normal direction, the smallest region; ties keep the smallest id.
DedupResult dedup_halfplanes(std::span<const HalfPlane> halfplanes);

struct ConvexHull {
  std::vector<WeightedPoint> vertices;  // counterclockwise, strictly convex
  std::vector<WeightedPoint> lower;     // x-monotone chains, left to right
  std::vector<WeightedPoint> upper;
};

/// Andrew's monotone chain. Precondition: points is non-empty.
ConvexHull convex_hull(std::span<const WeightedPoint> points);

/// A hull vertex maximizing a*x + b*y, found by binary search on one chain.
const WeightedPoint& extreme_point(const ConvexHull& hull, std::int64_t a, std::int64_t b);

/// Ids of half-planes containing no point of the hull's point set.
std::vector<int> feasibility_check(const ConvexHull& hull, std::span<const HalfPlane> halfplanes);

/// Throws InvalidInput when ids are not a permutation of 0..n-1 or a value
/// leaves the declared bounds.
void validate_points(std::span<const WeightedPoint> points);
void validate_halfplanes(std::span<const HalfPlane> halfplanes);

}  // namespace hphs
