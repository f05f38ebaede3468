#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hphs/cutting.hpp"
#include "hphs/dp_reference.hpp"
#include "hphs/reduction.hpp"

namespace hphs {

struct FastOptions {
  int r = 0;  // 0 selects ceil(sqrt(m)) for m half-planes
  int rho = 2;
  std::uint64_t seed = 0;
  int max_children = 64;
  bool check_invariants = false;  // full recomputation after init and every reset
};

/// Lines handed to the cutting for a half-plane sequence. The offset is
/// clamped to the coordinate box and the line moved by half a unit into
/// the complement, so no integer point lies on it and its positive side
/// holds exactly the integer points hitting the half-plane.
std::vector<cutting::Line> engine_lines(std::span<const HalfPlane> hseq);

int default_r(int m);

struct FindResult {
  Cost delta = Cost::infinite();
  int arg = -1;          // point id
  int reset_index = 0;   // last iteration that reset arg's cost, 0 if none
};

struct InvariantReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Lazy-offset state of the accelerated DP for one candidate instance.
///
/// The true cost of a point is w + lambda(point) + the lambda of every cell
/// on its leaf-to-root path. Each cell keeps the minimum over its subtree
/// without its own lambda, together with the point realizing it. A marker
/// (nonzero lambda or reset index) on a point or cell is listed in the flush
/// list of every cell above it, so a later reset of a whole subtree can
/// clear the markers below first.
class EngineState {
 public:
  EngineState(const CandidateInstance& inst, std::span<const WeightedPoint> points,
              const FastOptions& options);

  /// Minimum current cost among points hitting the i-th half-plane (1-based).
  /// Ties go to the smallest point id.
  FindResult find_min_cost(int i) const;

  /// Sets the cost of every point outside the i-th half-plane to w + delta.
  void reset_cost(int i, Weight delta);

  InvariantReport check_invariants() const;

  const cutting::HierarchicalCutting& cutting() const { return cutting_; }
  int leaf_of(int point_id) const;
  Cost min_cost(int cell) const { return min_cost_[static_cast<std::size_t>(cell)]; }
  Weight cell_lambda(int cell) const { return cell_lam_[static_cast<std::size_t>(cell)]; }

  /// Fault injection for tests of the checker.
  void corrupt_cell_lambda(int cell, Weight offset) { cell_lam_[static_cast<std::size_t>(cell)] += offset; }
  void corrupt_point_lambda(int point_id, Weight offset);

 private:
  int local(int point_id) const;
  Weight path_sum(int cell) const;
  int path_reset(int cell) const;
  cutting::Classification class_of(int cell, int i) const;
  cutting::Classification classify_cell(int cell, const cutting::Line& line) const;
  bool hit(int k, const HalfPlane& h) const;
  std::int64_t key(int k) const { return w_[k] + lam_[k]; }
  bool heap_less(int a, int b) const;
  void heap_fix(int k);
  bool recompute(int cell);
  void mark_dirty(int cell);
  void settle();
  void enlist_point(int k);
  void enlist_cell(int cell);
  void flush(int cell);
  void reset_cell(int cell, int i, Weight delta);

  const CandidateInstance* inst_;
  std::span<const WeightedPoint> points_;
  bool check_;
  cutting::HierarchicalCutting cutting_;
  cutting::PhiLists phi_;  // restricted to cells holding points
  std::vector<int> parent_;
  std::vector<int> level_;
  std::vector<int> first_child_;  // children of c are [first_child_[c], first_child_[c] + child_count_[c])
  std::vector<int> child_count_;
  std::vector<int> vertex_start_;  // flat double copies of every cell's vertices
  std::vector<double> vx_;
  std::vector<double> vy_;

  // Points, by local index (position in inst.pids).
  std::vector<Weight> w_;
  std::vector<Weight> lam_;
  std::vector<int> reset_;
  std::vector<std::uint64_t> point_mask_;  // bit j: listed in the level-j ancestor
  std::vector<int> leaf_;
  std::vector<std::int64_t> px_;
  std::vector<std::int64_t> py_;
  std::vector<int> block_start_;  // per cell; points of leaf c are members_[start..start+count)
  std::vector<int> members_;      // ascending local index within each leaf
  std::vector<int> heap_;         // per-leaf binary heaps sharing members_' layout
  std::vector<int> heap_pos_;

  // Cells.
  std::vector<Weight> cell_lam_;
  std::vector<int> cell_reset_;
  std::vector<std::uint64_t> cell_mask_;
  std::vector<Cost> min_cost_;
  std::vector<int> min_arg_;  // local index, -1 when empty
  std::vector<int> count_;    // points in the subtree
  std::vector<std::vector<int>> flush_;  // cells as id, points as ~local

  // Per-call scratch: path sums of crossed cells, classification against the
  // current line, and cells awaiting recomputation grouped by level.
  mutable std::int64_t epoch_ = 0;
  mutable std::vector<Weight> path_memo_;
  mutable std::vector<std::int64_t> path_stamp_;
  mutable std::vector<signed char> class_memo_;
  mutable std::vector<int> class_stamp_;
  std::vector<std::int64_t> dirty_stamp_;
  std::vector<std::vector<int>> dirty_;

  // Costs and reset indices as the plain DP defines them; kept only when checking.
  std::vector<Weight> shadow_cost_;
  std::vector<int> shadow_reset_;
  std::vector<Weight> deltas_;
};

struct FastRunStats {
  double build_ms = 0;
  double solve_ms = 0;
  std::size_t cells = 0;
  int depth = 0;
  int r = 0;
};

/// Same contract as run_reference. Throws InternalError when invariant
/// checking is on and a check fails.
IndirectSolution run_fast(const CandidateInstance& inst, std::span<const WeightedPoint> points,
                          const FastOptions& options, FastRunStats* stats = nullptr);

}  // namespace hphs
