#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "hphs/generate.hpp"
#include "hphs/geom.hpp"
#include "hphs/reduction.hpp"

namespace hphs::test {

inline WeightedPoint pt(int id, std::int64_t x, std::int64_t y, Weight w = 1) { return {id, x, y, w}; }
inline HalfPlane hp(int id, std::int64_t a, std::int64_t b, std::int64_t c) { return {id, a, b, c}; }

/// x >= -1, y >= -1, -x >= -1, -y >= -1.
inline std::vector<HalfPlane> unit_square() {
  return {hp(0, 1, 0, -1), hp(1, 0, 1, -1), hp(2, -1, 0, -1), hp(3, 0, -1, -1)};
}

/// Points (2,0) w3, (-2,0) w4, (0,0) w5 against x >= 1 and -x >= 1: optimum 7.
inline Instance weight_seven() {
  return {{pt(0, 2, 0, 3), pt(1, -2, 0, 4), pt(2, 0, 0, 5)}, {hp(0, 1, 0, 1), hp(1, -1, 0, 1)}};
}

inline Instance random_instance(int n, std::uint64_t seed, std::int64_t range, bool feasible = true) {
  GenOptions g;
  g.n = n;
  g.seed = seed;
  g.coord_range = range;
  g.ensure_feasible = feasible;
  return generate(g);
}

/// Everything the candidate loop sees, rebuilt the way the solver builds it.
struct Reduced {
  std::vector<WeightedPoint> points;
  CirclePoints circle;
  std::vector<HitRow> rows;
  BStar bstar;
  std::vector<Arc> candidates;
};

inline Reduced reduce(const Instance& inst) {
  Reduced r;
  r.points = inst.points;
  std::sort(r.points.begin(), r.points.end(), [](const auto& p, const auto& q) { return p.id < q.id; });
  r.circle = build_circle_points(dedup_halfplanes(inst.halfplanes).kept);
  r.rows = hit_rows(r.points, r.circle);
  r.bstar = select_bstar(r.rows, r.circle.size());
  r.candidates = candidate_arcs(r.rows, r.points, r.bstar.index);
  return r;
}

}  // namespace hphs::test
