#include "hphs/dp_reference.hpp"

#include <algorithm>

namespace hphs {

std::vector<int> backtrack(const DpTrace& trace) {
  std::vector<int> picked;
  int i = trace.iterations();
  while (i > 0) {
    picked.push_back(trace.argmin[i]);
    const int j = trace.reset_snapshot[i];
    if (j >= i) throw InternalError("backtrack: reset snapshot does not precede its iteration");
    i = j;
  }
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  return picked;
}

IndirectSolution run_reference(const CandidateInstance& inst, std::span<const WeightedPoint> points) {
  IndirectSolution out;
  const std::size_t np = inst.pids.size();
  std::vector<Weight> cost(np);
  std::vector<int> last_reset(np, 0);
  std::vector<char> inside(np, 0);
  for (std::size_t k = 0; k < np; ++k) cost[k] = points[inst.pids[k]].w;

  const int m = static_cast<int>(inst.hseq.size());
  for (int i = 1; i <= m; ++i) {
    const HalfPlane& h = inst.hseq[i - 1];
    // FindMinCost. pids is ascending, so the first strict minimum has the smallest id.
    std::size_t best = np;
    for (std::size_t k = 0; k < np; ++k) {
      inside[k] = hits(points[inst.pids[k]], h);
      if (inside[k] && (best == np || cost[k] < cost[best])) best = k;
    }
    if (best == np) {
      out.trace.delta.push_back(Cost::infinite());
      out.trace.argmin.push_back(-1);
      out.trace.reset_snapshot.push_back(0);
      out.value = Cost::infinite();
      return out;
    }
    const Weight delta = cost[best];
    out.trace.delta.push_back(Cost::of(delta));
    out.trace.argmin.push_back(inst.pids[best]);
    out.trace.reset_snapshot.push_back(last_reset[best]);

    // ResetCost.
    for (std::size_t k = 0; k < np; ++k) {
      if (!inside[k]) {
        cost[k] = points[inst.pids[k]].w + delta;
        last_reset[k] = i;
      }
    }
  }
  out.value = out.trace.delta.back();
  out.points = backtrack(out.trace);
  return out;
}

}  // namespace hphs
