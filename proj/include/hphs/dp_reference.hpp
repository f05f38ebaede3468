#pragma once

#include <span>
#include <vector>

#include "hphs/geom.hpp"
#include "hphs/reduction.hpp"

namespace hphs {

/// Per-iteration record of the interval-coverage DP, 1-based.
///
/// delta[0] is the zero base value. For i >= 1, argmin[i] is the point id that
/// realized delta[i] and reset_snapshot[i] the iteration of that point's last
/// cost reset at that moment (0 = never reset). When the run aborts,
/// delta.back() is Infinite and the later iterations are absent.
struct DpTrace {
  std::vector<Cost> delta{Cost::of(0)};
  std::vector<int> argmin{-1};
  std::vector<int> reset_snapshot{0};

  int iterations() const { return static_cast<int>(delta.size()) - 1; }
  bool aborted() const { return delta.back().is_infinite(); }
};

/// (P'_alpha, W_alpha). Infinite value means the candidate cannot be
/// completed without its own defining point; points is then empty.
struct IndirectSolution {
  Cost value = Cost::of(0);
  std::vector<int> points;  // distinct point ids, ascending
  DpTrace trace;
};

/// Follows (argmin, reset snapshot) pairs back from the last iteration.
/// Precondition: the trace is complete and finite.
std::vector<int> backtrack(const DpTrace& trace);

/// Linear-scan execution of the DP over inst.hseq and the points inst.pids.
/// `points` is indexed by point id. FindMinCost ties go to the smallest id.
IndirectSolution run_reference(const CandidateInstance& inst, std::span<const WeightedPoint> points);

}  // namespace hphs
