#include "hphs/geom.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

namespace hphs {

namespace {

// 0 for directions in [0, pi), 1 for [pi, 2*pi).
int half_of(std::int64_t a, std::int64_t b) {
  return (b > 0 || (b == 0 && a > 0)) ? 0 : 1;
}

Int128 cross(std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2) {
  return Int128{a1} * b2 - Int128{b1} * a2;
}

Int128 turn(const WeightedPoint& o, const WeightedPoint& p, const WeightedPoint& q) {
  return cross(p.x - o.x, p.y - o.y, q.x - o.x, q.y - o.y);
}

std::int64_t direction_scale(const HalfPlane& h) {
  return std::gcd(std::llabs(h.a), std::llabs(h.b));
}

// True if h1 is strictly smaller than h2, for equal directions.
bool more_restrictive(const HalfPlane& h1, const HalfPlane& h2) {
  // Regions are {n.x >= c_i / s_i} over the shared primitive normal n.
  const Int128 lhs = Int128{h1.c} * direction_scale(h2);
  const Int128 rhs = Int128{h2.c} * direction_scale(h1);
  return lhs > rhs;
}

const WeightedPoint& extreme_on_chain(const std::vector<WeightedPoint>& chain, std::int64_t a,
                                      std::int64_t b) {
  // The directional derivative along the chain changes sign at most once.
  std::size_t lo = 0;
  std::size_t hi = chain.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const WeightedPoint& p = chain[mid];
    const WeightedPoint& q = chain[mid + 1];
    const Int128 gain = Int128{a} * (q.x - p.x) + Int128{b} * (q.y - p.y);
    if (gain > 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return chain[lo];
}

}  // namespace

std::weak_ordering compare_normals(const HalfPlane& h1, const HalfPlane& h2) {
  const int s1 = half_of(h1.a, h1.b);
  const int s2 = half_of(h2.a, h2.b);
  if (s1 != s2) return s1 < s2 ? std::weak_ordering::less : std::weak_ordering::greater;
  const Int128 cr = cross(h1.a, h1.b, h2.a, h2.b);
  if (cr > 0) return std::weak_ordering::less;
  if (cr < 0) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

DedupResult dedup_halfplanes(std::span<const HalfPlane> halfplanes) {
  std::vector<HalfPlane> sorted(halfplanes.begin(), halfplanes.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const HalfPlane& x, const HalfPlane& y) {
    const auto ord = compare_normals(x, y);
    if (ord != 0) return ord < 0;
    return x.id < y.id;
  });

  DedupResult out;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    while (j < sorted.size() && same_direction(sorted[i], sorted[j])) ++j;
    std::size_t best = i;
    for (std::size_t t = i + 1; t < j; ++t) {
      if (more_restrictive(sorted[t], sorted[best])) best = t;
    }
    for (std::size_t t = i; t < j; ++t) {
      (t == best ? out.kept : out.dropped).push_back(sorted[t]);
    }
    i = j;
  }
  return out;
}

ConvexHull convex_hull(std::span<const WeightedPoint> points) {
  if (points.empty()) throw InvalidInput("convex_hull: empty point set");
  std::vector<WeightedPoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const WeightedPoint& p, const WeightedPoint& q) {
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return p.id < q.id;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const WeightedPoint& p, const WeightedPoint& q) {
                          return p.x == q.x && p.y == q.y;
                        }),
            pts.end());

  ConvexHull hull;
  for (const auto& p : pts) {
    while (hull.lower.size() >= 2 &&
           turn(hull.lower[hull.lower.size() - 2], hull.lower.back(), p) <= 0) {
      hull.lower.pop_back();
    }
    hull.lower.push_back(p);
  }
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (hull.upper.size() >= 2 &&
           turn(hull.upper[hull.upper.size() - 2], hull.upper.back(), *it) <= 0) {
      hull.upper.pop_back();
    }
    hull.upper.push_back(*it);
  }

  // upper currently runs right to left; together with lower it closes the ccw loop.
  hull.vertices = hull.lower;
  if (hull.upper.size() > 2) {
    hull.vertices.insert(hull.vertices.end(), hull.upper.begin() + 1, hull.upper.end() - 1);
  }
  std::reverse(hull.upper.begin(), hull.upper.end());
  return hull;
}

const WeightedPoint& extreme_point(const ConvexHull& hull, std::int64_t a, std::int64_t b) {
  return b >= 0 ? extreme_on_chain(hull.upper, a, b) : extreme_on_chain(hull.lower, a, b);
}

std::vector<int> feasibility_check(const ConvexHull& hull, std::span<const HalfPlane> halfplanes) {
  std::vector<int> unhit;
  for (const auto& h : halfplanes) {
    if (!hits(extreme_point(hull, h.a, h.b), h)) unhit.push_back(h.id);
  }
  return unhit;
}

namespace {

template <typename T>
void check_permutation(std::span<const T> items, const char* what) {
  std::vector<char> seen(items.size(), 0);
  for (const auto& it : items) {
    if (it.id < 0 || static_cast<std::size_t>(it.id) >= items.size()) {
      throw InvalidInput(std::string(what) + " id " + std::to_string(it.id) +
                         " outside 0.." + std::to_string(items.size() - 1));
    }
    if (seen[it.id]) {
      throw InvalidInput(std::string("duplicate ") + what + " id " + std::to_string(it.id));
    }
    seen[it.id] = 1;
  }
}

bool within(std::int64_t v, std::int64_t bound) { return v >= -bound && v <= bound; }

}  // namespace

void validate_points(std::span<const WeightedPoint> points) {
  check_permutation(points, "point");
  for (const auto& p : points) {
    if (!within(p.x, kCoordBound) || !within(p.y, kCoordBound)) {
      throw InvalidInput("point " + std::to_string(p.id) + ": coordinate out of range");
    }
    if (p.w < 1 || p.w > kWeightBound) {
      throw InvalidInput("point " + std::to_string(p.id) + ": weight must be in [1, 2^31]");
    }
  }
}

void validate_halfplanes(std::span<const HalfPlane> halfplanes) {
  check_permutation(halfplanes, "half-plane");
  for (const auto& h : halfplanes) {
    if (h.a == 0 && h.b == 0) {
      throw InvalidInput("half-plane " + std::to_string(h.id) + ": zero normal");
    }
    if (!within(h.a, kCoordBound) || !within(h.b, kCoordBound) || !within(h.c, kOffsetBound)) {
      throw InvalidInput("half-plane " + std::to_string(h.id) + ": coefficient out of range");
    }
  }
}

}  // namespace hphs
