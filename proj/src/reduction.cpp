#include "hphs/reduction.hpp"

#include <algorithm>
#include <bit>

namespace hphs {

CirclePoints build_circle_points(std::span<const HalfPlane> deduped) {
  CirclePoints circle;
  circle.order.assign(deduped.begin(), deduped.end());
  std::sort(circle.order.begin(), circle.order.end(),
            [](const HalfPlane& x, const HalfPlane& y) { return compare_normals(x, y) < 0; });
  int max_id = -1;
  for (const auto& h : circle.order) max_id = std::max(max_id, h.id);
  circle.pos_of.assign(static_cast<std::size_t>(max_id + 1), -1);
  for (int i = 0; i < circle.size(); ++i) {
    if (i > 0 && compare_normals(circle.order[i - 1], circle.order[i]) == 0) {
      throw InvalidInput("build_circle_points: duplicate normal direction");
    }
    circle.pos_of[circle.order[i].id] = i;
  }
  return circle;
}

int HitRow::count() const {
  int total = 0;
  for (auto w : words) total += std::popcount(w);
  return total;
}

std::vector<HitRow> hit_rows(std::span<const WeightedPoint> points, const CirclePoints& circle) {
  const int n = circle.size();
  const std::size_t nwords = (static_cast<std::size_t>(n) + 63) / 64;
  std::vector<HitRow> rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    HitRow row{p.id, n, std::vector<std::uint64_t>(nwords, 0)};
    for (int i = 0; i < n; ++i) {
      if (hits(p, circle.order[i])) row.set(i);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool Arc::contains(const Arc& other) const {
  if (full()) return true;
  if (other.full()) return false;
  // Offsets of other's endpoints measured counterclockwise from this start.
  const int n = circle_size;
  const int span = length();
  const int s = (other.start - start + n) % n;
  return s < span && s + other.length() <= span;
}

std::vector<Arc> arcs_of(const HitRow& row, Weight weight) {
  const int n = row.length;
  std::vector<Arc> arcs;
  int zero = -1;
  for (int i = 0; i < n; ++i) {
    if (!row.test(i)) {
      zero = i;
      break;
    }
  }
  if (zero < 0) {
    if (n > 0) arcs.push_back(Arc{row.point_id, 0, n - 1, n, weight});
    return arcs;
  }
  // Walk once around the circle starting just past a 0-bit.
  int run_start = -1;
  for (int step = 1; step <= n; ++step) {
    const int i = (zero + step) % n;
    if (row.test(i)) {
      if (run_start < 0) run_start = i;
    } else if (run_start >= 0) {
      arcs.push_back(Arc{row.point_id, run_start, (i - 1 + n) % n, n, weight});
      run_start = -1;
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
  return arcs;
}

BStar select_bstar(std::span<const HitRow> rows, int circle_size) {
  std::vector<int> coverage(static_cast<std::size_t>(circle_size), 0);
  for (const auto& row : rows) {
    for (std::size_t w = 0; w < row.words.size(); ++w) {
      std::uint64_t bits = row.words[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        ++coverage[w * 64 + static_cast<std::size_t>(b)];
        bits &= bits - 1;
      }
    }
  }
  BStar best{0, coverage.empty() ? 0 : coverage[0]};
  for (int i = 1; i < circle_size; ++i) {
    if (coverage[i] < best.kappa) best = BStar{i, coverage[i]};
  }
  return best;
}

std::vector<Arc> candidate_arcs(std::span<const HitRow> rows, std::span<const WeightedPoint> points,
                                int bstar) {
  std::vector<Arc> out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const HitRow& row = rows[k];
    if (!row.test(bstar)) continue;
    const int n = row.length;
    int back = 0;  // covered positions clockwise of bstar
    while (back < n - 1 && row.test((bstar - back - 1 + n) % n)) ++back;
    if (back == n - 1) {
      out.push_back(Arc{row.point_id, 0, n - 1, n, points[k].w});
      continue;
    }
    int fwd = 0;
    while (row.test((bstar + fwd + 1) % n)) ++fwd;
    out.push_back(Arc{row.point_id, (bstar - back + n) % n, (bstar + fwd) % n, n, points[k].w});
  }
  return out;
}

CandidateInstance build_instance(const Arc& alpha, const CirclePoints& circle, int point_count) {
  CandidateInstance inst;
  inst.alpha = alpha;
  inst.p_alpha = alpha.point_id;
  const int n = circle.size();
  if (!alpha.full()) {
    const int uncovered = n - alpha.length();
    inst.hseq.reserve(static_cast<std::size_t>(uncovered));
    inst.hseq_pos.reserve(static_cast<std::size_t>(uncovered));
    for (int t = 1; t <= uncovered; ++t) {
      const int pos = (alpha.end + t) % n;
      inst.hseq.push_back(circle.order[pos]);
      inst.hseq_pos.push_back(pos);
    }
  }
  inst.pids.reserve(static_cast<std::size_t>(point_count > 0 ? point_count - 1 : 0));
  for (int id = 0; id < point_count; ++id) {
    if (id != alpha.point_id) inst.pids.push_back(id);
  }
  return inst;
}

}  // namespace hphs
