#include "hphs/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>

namespace hphs::oracle {

ExplicitIntervalInstance explicit_arcs(const CandidateInstance& inst, std::span<const HitRow> rows,
                                       std::span<const WeightedPoint> points) {
  ExplicitIntervalInstance out;
  out.m = static_cast<int>(inst.hseq_pos.size());
  for (const auto& row : rows) {
    if (row.point_id == inst.p_alpha) continue;
    const Weight w = points[static_cast<std::size_t>(row.point_id)].w;
    for (const Arc& arc : arcs_of(row, w)) {
      if (arc.contains(inst.alpha)) continue;
      // What remains of the arc is one run of consecutive uncovered positions.
      int left = 0;
      int right = 0;
      for (int t = 1; t <= out.m; ++t) {
        if (!arc.covers(inst.hseq_pos[static_cast<std::size_t>(t - 1)])) continue;
        if (left == 0) left = t;
        right = t;
      }
      if (left == 0) continue;
      out.intervals.push_back(ExplicitInterval{row.point_id, left, right, w, left - 1});
    }
  }
  return out;
}

IntervalCover interval_cover_dp(const ExplicitIntervalInstance& inst) {
  IntervalCover out;
  out.delta.assign(static_cast<std::size_t>(inst.m) + 1, Cost::infinite());
  out.delta[0] = Cost::of(0);
  std::vector<std::vector<int>> starting(static_cast<std::size_t>(inst.m) + 2);
  std::vector<std::vector<int>> ending(static_cast<std::size_t>(inst.m) + 2);
  for (std::size_t j = 0; j < inst.intervals.size(); ++j) {
    starting[static_cast<std::size_t>(inst.intervals[j].left)].push_back(static_cast<int>(j));
    ending[static_cast<std::size_t>(inst.intervals[j].right)].push_back(static_cast<int>(j));
  }
  std::multiset<std::pair<Weight, int>> active;
  std::vector<Weight> cost(inst.intervals.size(), 0);
  std::vector<char> alive(inst.intervals.size(), 0);
  for (int i = 1; i <= inst.m; ++i) {
    for (int j : starting[static_cast<std::size_t>(i)]) {
      const ExplicitInterval& iv = inst.intervals[static_cast<std::size_t>(j)];
      const Cost base = out.delta[static_cast<std::size_t>(iv.before)];
      if (base.is_infinite()) continue;
      cost[j] = iv.weight + base.value();
      alive[j] = 1;
      active.emplace(cost[j], j);
    }
    out.delta[static_cast<std::size_t>(i)] = active.empty() ? Cost::infinite() : Cost::of(active.begin()->first);
    for (int j : ending[static_cast<std::size_t>(i)]) {
      if (alive[j]) active.erase(active.find({cost[j], j}));
    }
  }
  out.value = out.delta.back();
  return out;
}

HittingSet hitting_set_bruteforce(std::span<const WeightedPoint> points,
                                  std::span<const HalfPlane> halfplanes) {
  const int n = static_cast<int>(points.size());
  if (n > kMaxBruteforcePoints) {
    throw InvalidInput("hitting_set_bruteforce: at most " + std::to_string(kMaxBruteforcePoints) + " points");
  }
  std::vector<std::uint32_t> hitters;
  hitters.reserve(halfplanes.size());
  for (const auto& h : halfplanes) {
    std::uint32_t mask = 0;
    for (int k = 0; k < n; ++k) {
      if (hits(points[k], h)) mask |= std::uint32_t{1} << k;
    }
    if (mask == 0) return {};
    hitters.push_back(mask);
  }

  std::uint32_t best_mask = 0;
  Weight best = 0;
  bool found = false;
  auto dfs = [&](auto&& self, std::uint32_t chosen, Weight weight) -> void {
    if (found && weight >= best) return;
    const std::uint32_t* open = nullptr;
    for (const auto& mask : hitters) {
      if (!(mask & chosen)) {
        open = &mask;
        break;
      }
    }
    if (!open) {
      found = true;
      best = weight;
      best_mask = chosen;
      return;
    }
    for (int k = 0; k < n; ++k) {
      if (*open & (std::uint32_t{1} << k)) self(self, chosen | (std::uint32_t{1} << k), weight + points[k].w);
    }
  };
  dfs(dfs, 0, 0);

  HittingSet out;
  out.weight = Cost::of(best);
  for (int k = 0; k < n; ++k) {
    if (best_mask & (std::uint32_t{1} << k)) out.points.push_back(points[k].id);
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

CircularCover circular_cover_bruteforce(std::span<const HitRow> rows, int circle_size,
                                        std::span<const WeightedPoint> points) {
  if (static_cast<int>(rows.size()) > kMaxCircularPoints || circle_size > kMaxCircularPoints) {
    throw InvalidInput("circular_cover_bruteforce: at most " + std::to_string(kMaxCircularPoints) +
                       " points and circle positions");
  }
  CircularCover out;
  if (circle_size == 0) {
    out.weight = Cost::of(0);
    return out;
  }
  std::vector<Arc> arcs;
  for (const auto& row : rows) {
    for (const Arc& a : arcs_of(row, points[static_cast<std::size_t>(row.point_id)].w)) arcs.push_back(a);
  }

  const int n = circle_size;
  for (const Arc& first : arcs) {
    if (!first.covers(0)) continue;
    // Positions 1..len run counterclockwise from just past first.end.
    const int len = n - first.length();
    std::vector<int> lo;
    std::vector<int> hi;
    std::vector<int> usable;
    for (std::size_t j = 0; j < arcs.size(); ++j) {
      const Arc& a = arcs[j];
      if (a.contains(first)) continue;
      int l = 0;
      int r = 0;
      for (int t = 1; t <= len; ++t) {
        if (!a.covers((first.end + t) % n)) continue;
        if (l == 0) l = t;
        r = t;
      }
      if (l == 0) continue;
      usable.push_back(static_cast<int>(j));
      lo.push_back(l);
      hi.push_back(r);
    }
    // best[t]: cheapest cover of 1..t; via[t]: the arc used for position t.
    std::vector<Cost> best(static_cast<std::size_t>(len) + 1, Cost::infinite());
    std::vector<int> via(static_cast<std::size_t>(len) + 1, -1);
    best[0] = Cost::of(0);
    for (int t = 1; t <= len; ++t) {
      for (std::size_t u = 0; u < usable.size(); ++u) {
        if (lo[u] > t || hi[u] < t) continue;
        const Cost cand = best[static_cast<std::size_t>(lo[u] - 1)].plus(arcs[usable[u]].weight);
        if (cand < best[static_cast<std::size_t>(t)]) {
          best[static_cast<std::size_t>(t)] = cand;
          via[static_cast<std::size_t>(t)] = static_cast<int>(u);
        }
      }
    }
    const Cost total = best.back().plus(first.weight);
    if (!(total < out.weight)) continue;
    out.weight = total;
    out.arcs = {first};
    for (int t = len; t > 0;) {
      const int u = via[static_cast<std::size_t>(t)];
      out.arcs.push_back(arcs[usable[u]]);
      t = lo[u] - 1;
    }
  }

  std::vector<int> owners;
  for (const Arc& a : out.arcs) owners.push_back(a.point_id);
  std::sort(owners.begin(), owners.end());
  if (std::adjacent_find(owners.begin(), owners.end()) != owners.end()) {
    throw InternalError("circular_cover_bruteforce: optimal cover uses two arcs of one point");
  }
  return out;
}

}  // namespace hphs::oracle
