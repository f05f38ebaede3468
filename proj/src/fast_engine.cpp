#include "hphs/fast_engine.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

namespace hphs {

std::vector<cutting::Line> engine_lines(std::span<const HalfPlane> hseq) {
  std::vector<cutting::Line> lines;
  lines.reserve(hseq.size());
  for (const auto& h : hseq) {
    // Beyond +-box no point with |x|, |y| <= 2^30 can change side.
    const std::int64_t box = (std::llabs(h.a) + std::llabs(h.b)) * kCoordBound;
    const std::int64_t c = std::clamp(h.c, -box, box + 1);
    lines.push_back(cutting::Line{2 * h.a, 2 * h.b, 2 * c - 1});
  }
  return lines;
}

int default_r(int m) {
  int r = 1;
  while (static_cast<std::int64_t>(r) * r < m) ++r;
  return r;
}

EngineState::EngineState(const CandidateInstance& inst, std::span<const WeightedPoint> points,
                         const FastOptions& options)
    : inst_(&inst), points_(points), check_(options.check_invariants) {
  const int m = static_cast<int>(inst.hseq.size());
  const int np = static_cast<int>(inst.pids.size());
  std::vector<WeightedPoint> located;
  located.reserve(inst.pids.size());
  for (int id : inst.pids) located.push_back(points[static_cast<std::size_t>(id)]);

  cutting::Options copt;
  copt.r = options.r > 0 ? std::min(options.r, std::max(m, 1)) : default_r(m);
  copt.rho = options.rho;
  copt.seed = options.seed;
  copt.max_children = options.max_children;
  const auto lines = engine_lines(inst.hseq);
  cutting_ = cutting::build(lines, located, copt);
  phi_ = cutting::phi_lists(cutting_);

  const int cells = cutting_.cell_count();
  parent_.resize(static_cast<std::size_t>(cells));
  level_.resize(static_cast<std::size_t>(cells));
  first_child_.assign(static_cast<std::size_t>(cells), 0);
  child_count_.assign(static_cast<std::size_t>(cells), 0);
  vertex_start_.assign(static_cast<std::size_t>(cells) + 1, 0);
  for (const auto& c : cutting_.cells()) {
    parent_[c.id] = c.parent;
    level_[c.id] = c.level;
    if (!c.children.empty()) {
      first_child_[c.id] = c.children.front();
      child_count_[c.id] = static_cast<int>(c.children.size());
      if (c.children.back() - c.children.front() + 1 != child_count_[c.id]) {
        throw InternalError("fast engine: children ids are not contiguous");
      }
    }
    vertex_start_[c.id + 1] = vertex_start_[c.id] + static_cast<int>(c.region.vertices.size());
    for (const auto& v : c.region.vertices) {
      vx_.push_back(v.fx);
      vy_.push_back(v.fy);
    }
  }

  w_.resize(np);
  leaf_.resize(np);
  px_.resize(np);
  py_.resize(np);
  for (int k = 0; k < np; ++k) {
    w_[k] = located[k].w;
    px_[k] = located[k].x;
    py_[k] = located[k].y;
    leaf_[k] = cutting::locate(cutting_, located[k].x, located[k].y);
    if (leaf_[k] < 0) throw InternalError("fast engine: point outside the working region");
  }
  lam_.assign(np, 0);
  reset_.assign(np, 0);
  point_mask_.assign(np, 0);

  count_.assign(cells, 0);
  for (int k = 0; k < np; ++k) ++count_[leaf_[k]];
  block_start_.assign(static_cast<std::size_t>(cells) + 1, 0);
  for (int c = 0; c < cells; ++c) block_start_[c + 1] = block_start_[c] + count_[c];
  members_.resize(np);
  {
    std::vector<int> fill(block_start_.begin(), block_start_.end() - 1);
    for (int k = 0; k < np; ++k) members_[fill[leaf_[k]]++] = k;
  }
  for (int c = cells - 1; c > 0; --c) count_[parent_[c]] += count_[c];

  // Only cells holding points matter from here on. A nonempty cell has a
  // nonempty parent, so the kept lists stay closed under taking parents.
  auto keep_nonempty = [&](std::vector<int>& offsets, std::vector<int>& ids) {
    std::size_t out = 0;
    int begin = 0;
    for (std::size_t li = 0; li + 1 < offsets.size(); ++li) {
      const int end = offsets[li + 1];
      for (int j = begin; j < end; ++j) {
        if (count_[ids[j]] > 0) ids[out++] = ids[j];
      }
      begin = end;
      offsets[li + 1] = static_cast<int>(out);
    }
    ids.resize(out);
    ids.shrink_to_fit();
  };
  keep_nonempty(phi_.leaf_offsets, phi_.leaf_cells);
  keep_nonempty(phi_.internal_offsets, phi_.internal_cells);

  heap_ = members_;
  heap_pos_.resize(np);
  for (int c = 0; c < cells; ++c) {
    const int s = block_start_[c];
    const int e = block_start_[c + 1];
    std::make_heap(heap_.begin() + s, heap_.begin() + e, [this](int a, int b) { return heap_less(b, a); });
    for (int j = s; j < e; ++j) heap_pos_[heap_[j]] = j;
  }

  cell_lam_.assign(cells, 0);
  cell_reset_.assign(cells, 0);
  cell_mask_.assign(cells, 0);
  min_cost_.assign(cells, Cost::infinite());
  min_arg_.assign(cells, -1);
  flush_.assign(cells, {});
  for (int c = cells - 1; c >= 0; --c) recompute(c);

  path_memo_.assign(cells, 0);
  path_stamp_.assign(cells, -1);
  class_memo_.assign(cells, 0);
  class_stamp_.assign(cells, 0);
  dirty_stamp_.assign(cells, -1);
  dirty_.assign(static_cast<std::size_t>(cutting_.depth()) + 1, {});

  if (check_) {
    shadow_cost_ = w_;
    shadow_reset_.assign(np, 0);
    deltas_.assign(1, 0);
  }
}

int EngineState::local(int point_id) const {
  const auto it = std::lower_bound(inst_->pids.begin(), inst_->pids.end(), point_id);
  if (it == inst_->pids.end() || *it != point_id) throw InvalidInput("fast engine: unknown point id");
  return static_cast<int>(it - inst_->pids.begin());
}

int EngineState::leaf_of(int point_id) const { return leaf_[local(point_id)]; }

void EngineState::corrupt_point_lambda(int point_id, Weight offset) { lam_[local(point_id)] += offset; }

Weight EngineState::path_sum(int cell) const {
  Weight s = 0;
  for (int c = cell; c >= 0; c = parent_[c]) s += cell_lam_[c];
  return s;
}

int EngineState::path_reset(int cell) const {
  int r = 0;
  for (int c = cell; c >= 0; c = parent_[c]) r = std::max(r, cell_reset_[c]);
  return r;
}

cutting::Classification EngineState::class_of(int cell, int i) const {
  if (class_stamp_[cell] != i) {
    class_stamp_[cell] = i;
    class_memo_[cell] = static_cast<signed char>(
        classify_cell(cell, cutting_.lines()[static_cast<std::size_t>(i - 1)]));
  }
  return static_cast<cutting::Classification>(class_memo_[cell]);
}

// cutting::classify over the flat vertex copies, with the same filter as sign_at.
cutting::Classification EngineState::classify_cell(int cell, const cutting::Line& line) const {
  const double a = static_cast<double>(line.a);
  const double b = static_cast<double>(line.b);
  const double c = static_cast<double>(line.c);
  const double fc = std::fabs(c);
  bool pos = false;
  bool neg = false;
  const int s = vertex_start_[cell];
  for (int j = s; j < vertex_start_[cell + 1]; ++j) {
    const double ax = a * vx_[j];
    const double by = b * vy_[j];
    const double val = ax + by - c;
    const double band = (std::fabs(ax) + std::fabs(by) + fc) * 0x1p-48;
    int sign;
    if (val > band) {
      sign = 1;
    } else if (val < -band) {
      sign = -1;
    } else {
      sign = cutting::exact_sign_at(line, cutting_.cell(cell).region.vertices[static_cast<std::size_t>(j - s)]);
    }
    pos |= sign > 0;
    neg |= sign < 0;
    if (pos && neg) return cutting::Classification::Crossed;
  }
  return neg ? cutting::Classification::FullyOutside : cutting::Classification::FullyInside;
}

bool EngineState::hit(int k, const HalfPlane& h) const {
  return Int128{h.a} * px_[k] + Int128{h.b} * py_[k] >= Int128{h.c};
}

bool EngineState::heap_less(int a, int b) const {
  const Weight ka = key(a);
  const Weight kb = key(b);
  return ka < kb || (ka == kb && a < b);
}

void EngineState::heap_fix(int k) {
  const int s = block_start_[leaf_[k]];
  const int e = block_start_[leaf_[k] + 1];
  int pos = heap_pos_[k];
  auto place = [&](int at, int item) {
    heap_[at] = item;
    heap_pos_[item] = at;
  };
  while (pos > s) {
    const int up = s + (pos - s - 1) / 2;
    if (!heap_less(k, heap_[up])) break;
    place(pos, heap_[up]);
    pos = up;
  }
  for (;;) {
    int child = s + 2 * (pos - s) + 1;
    if (child >= e) break;
    if (child + 1 < e && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], k)) break;
    place(pos, heap_[child]);
    pos = child;
  }
  place(pos, k);
}

bool EngineState::recompute(int cell) {
  Cost best = Cost::infinite();
  int arg = -1;
  if (count_[cell] > 0) {
    if (cutting_.is_leaf(cell)) {
      arg = heap_[block_start_[cell]];
      best = Cost::of(key(arg));
    } else {
      for (int ch = first_child_[cell], e = ch + child_count_[cell]; ch < e; ++ch) {
        if (count_[ch] == 0) continue;
        const Cost v = min_cost_[ch].plus(cell_lam_[ch]);
        if (arg < 0 || v < best || (v == best && min_arg_[ch] < arg)) {
          best = v;
          arg = min_arg_[ch];
        }
      }
    }
  }
  const bool changed = best != min_cost_[cell] || arg != min_arg_[cell];
  min_cost_[cell] = best;
  min_arg_[cell] = arg;
  return changed;
}

void EngineState::mark_dirty(int cell) {
  if (dirty_stamp_[cell] == epoch_) return;
  dirty_stamp_[cell] = epoch_;
  dirty_[static_cast<std::size_t>(level_[cell])].push_back(cell);
}

// Recomputes queued cells deepest level first; a changed cell queues its parent.
void EngineState::settle() {
  for (int lv = static_cast<int>(dirty_.size()) - 1; lv >= 0; --lv) {
    auto& queue = dirty_[static_cast<std::size_t>(lv)];
    for (int c : queue) {
      if (recompute(c) && parent_[c] >= 0) mark_dirty(parent_[c]);
    }
    queue.clear();
  }
}

void EngineState::enlist_point(int k) {
  for (int c = leaf_[k]; c >= 0; c = parent_[c]) {
    const std::uint64_t bit = std::uint64_t{1} << level_[c];
    if (!(point_mask_[k] & bit)) {
      point_mask_[k] |= bit;
      flush_[c].push_back(~k);
    }
  }
}

void EngineState::enlist_cell(int cell) {
  for (int c = parent_[cell]; c >= 0; c = parent_[c]) {
    const std::uint64_t bit = std::uint64_t{1} << level_[c];
    if (!(cell_mask_[cell] & bit)) {
      cell_mask_[cell] |= bit;
      flush_[c].push_back(cell);
    }
  }
}

void EngineState::flush(int cell) {
  std::vector<int> list = std::move(flush_[cell]);
  flush_[cell].clear();
  const std::uint64_t bit = std::uint64_t{1} << level_[cell];
  for (int e : list) {
    if (e >= 0) {
      cell_mask_[e] &= ~bit;
      if (cell_lam_[e] == 0 && cell_reset_[e] == 0) continue;
      cell_lam_[e] = 0;
      cell_reset_[e] = 0;
      mark_dirty(parent_[e]);
    } else {
      const int k = ~e;
      point_mask_[k] &= ~bit;
      if (lam_[k] == 0 && reset_[k] == 0) continue;
      lam_[k] = 0;
      reset_[k] = 0;
      heap_fix(k);
      mark_dirty(leaf_[k]);
    }
  }
}

// Precondition: the parent's path sum is memoized for this epoch.
void EngineState::reset_cell(int cell, int i, Weight delta) {
  flush(cell);
  const int up = parent_[cell];
  cell_lam_[cell] = delta - (up >= 0 ? path_memo_[up] : 0);
  cell_reset_[cell] = i;
  enlist_cell(cell);
  if (up >= 0) mark_dirty(up);
}

// Cells crossed by a line form a subtree containing the root, and the phi
// lists are in ascending id order, so each parent's path sum is memoized
// before any child asks for it.
#define HPHS_MEMO_PATH(cell)                                                    \
  do {                                                                          \
    const int up_ = parent_[cell];                                              \
    path_memo_[cell] = cell_lam_[cell] + (up_ >= 0 ? path_memo_[up_] : 0);      \
    path_stamp_[cell] = epoch_;                                                 \
  } while (0)

FindResult EngineState::find_min_cost(int i) const {
  ++epoch_;
  const HalfPlane& h = inst_->hseq[static_cast<std::size_t>(i - 1)];
  const int root = cutting_.root();
  Weight best_cost = 0;
  int best = -1;
  auto consider = [&](Weight cost, int k) {
    if (best < 0 || cost < best_cost || (cost == best_cost && k < best)) {
      best_cost = cost;
      best = k;
    }
  };

  const auto where = class_of(root, i);
  if (where == cutting::Classification::FullyInside && count_[root] > 0) {
    consider(min_cost_[root].value() + cell_lam_[root], min_arg_[root]);
  } else if (where == cutting::Classification::Crossed) {
    for (int cell : phi_.internals(i - 1)) {
      HPHS_MEMO_PATH(cell);
      const Weight ps = path_memo_[cell];
      for (int ch = first_child_[cell], e = ch + child_count_[cell]; ch < e; ++ch) {
        if (count_[ch] == 0) continue;
        if (class_of(ch, i) == cutting::Classification::FullyInside) {
          consider(min_cost_[ch].value() + cell_lam_[ch] + ps, min_arg_[ch]);
        }
      }
    }
    for (int leaf : phi_.leaves(i - 1)) {
      HPHS_MEMO_PATH(leaf);
      const Weight ps = path_memo_[leaf];
      for (int j = block_start_[leaf]; j < block_start_[leaf + 1]; ++j) {
        const int k = members_[j];
        if (hit(k, h)) consider(key(k) + ps, k);
      }
    }
  }

  FindResult out;
  if (best < 0) return out;
  out.delta = Cost::of(best_cost);
  out.arg = inst_->pids[static_cast<std::size_t>(best)];
  out.reset_index = std::max(reset_[best], path_reset(leaf_[best]));
  return out;
}

void EngineState::reset_cost(int i, Weight delta) {
  ++epoch_;
  const HalfPlane& h = inst_->hseq[static_cast<std::size_t>(i - 1)];
  const int root = cutting_.root();

  const auto where = class_of(root, i);
  if (where == cutting::Classification::FullyOutside) {
    if (count_[root] > 0) reset_cell(root, i, delta);
  } else if (where == cutting::Classification::Crossed) {
    // Crossed cells keep their offsets during a reset, so every memoized
    // path sum below stays valid while children and points change.
    for (int cell : phi_.internals(i - 1)) {
      HPHS_MEMO_PATH(cell);
      for (int ch = first_child_[cell], e = ch + child_count_[cell]; ch < e; ++ch) {
        if (count_[ch] == 0) continue;
        if (class_of(ch, i) == cutting::Classification::FullyOutside) reset_cell(ch, i, delta);
      }
    }
    for (int leaf : phi_.leaves(i - 1)) {
      HPHS_MEMO_PATH(leaf);
      const Weight ps = path_memo_[leaf];
      bool touched = false;
      for (int j = block_start_[leaf]; j < block_start_[leaf + 1]; ++j) {
        const int k = members_[j];
        if (hit(k, h)) continue;
        lam_[k] = delta - ps;
        reset_[k] = i;
        heap_fix(k);
        enlist_point(k);
        touched = true;
      }
      if (touched) mark_dirty(leaf);
    }
  }
  settle();

  if (check_) {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      if (!hit(static_cast<int>(k), h)) {
        shadow_cost_[k] = w_[k] + delta;
        shadow_reset_[k] = i;
      }
    }
    if (deltas_.size() <= static_cast<std::size_t>(i)) deltas_.resize(static_cast<std::size_t>(i) + 1, 0);
    deltas_[static_cast<std::size_t>(i)] = delta;
  }
}

#undef HPHS_MEMO_PATH

InvariantReport EngineState::check_invariants() const {
  InvariantReport report;
  auto fail = [&](std::string what) { report.violations.push_back(std::move(what)); };
  const int np = static_cast<int>(w_.size());
  const int cells = cutting_.cell_count();
  auto pid = [&](int k) { return std::to_string(inst_->pids[static_cast<std::size_t>(k)]); };

  // Invariant 1 and the reset-index rule, against the plain DP's bookkeeping.
  for (int k = 0; k < np; ++k) {
    const Weight cost = key(k) + path_sum(leaf_[k]);
    const int eff = std::max(reset_[k], path_reset(leaf_[k]));
    const std::string where = "point " + pid(k) + " (leaf " + std::to_string(leaf_[k]) + "): ";
    if (lam_[k] != 0 && reset_[k] == 0) fail(where + "offset without marker");
    if (!check_) continue;
    if (cost != shadow_cost_[k]) {
      fail(where + "cost " + std::to_string(cost) + ", expected " + std::to_string(shadow_cost_[k]));
    }
    if (eff != shadow_reset_[k]) {
      fail(where + "reset index " + std::to_string(eff) + ", expected " + std::to_string(shadow_reset_[k]));
    } else if (cost != w_[k] + deltas_[static_cast<std::size_t>(eff)]) {
      fail(where + "cost differs from w + delta of its reset iteration");
    }
  }

  // Invariant 2, bottom-up from the stored child values, plus empty-cell rules.
  for (int c = cells - 1; c >= 0; --c) {
    const std::string where = "cell " + std::to_string(c) + ": ";
    if (cell_lam_[c] != 0 && cell_reset_[c] == 0) fail(where + "offset without marker");
    Cost best = Cost::infinite();
    int arg = -1;
    int total = 0;
    if (cutting_.is_leaf(c)) {
      const int s = block_start_[c];
      const int e = block_start_[c + 1];
      total = e - s;
      for (int j = s; j < e; ++j) {
        const int k = members_[j];
        if (leaf_[k] != c) fail(where + "holds point " + pid(k) + " located elsewhere");
        const Cost v = Cost::of(key(k));
        if (arg < 0 || v < best || (v == best && k < arg)) {
          best = v;
          arg = k;
        }
        if (heap_[heap_pos_[k]] != k) fail(where + "heap position of point " + pid(k) + " is stale");
        if (j > s && heap_less(heap_[j], heap_[s + (j - s - 1) / 2])) fail(where + "heap order broken");
      }
    } else {
      for (int ch : cutting_.cell(c).children) {
        total += count_[ch];
        if (count_[ch] == 0) continue;
        const Cost v = min_cost_[ch].plus(cell_lam_[ch]);
        if (arg < 0 || v < best || (v == best && min_arg_[ch] < arg)) {
          best = v;
          arg = min_arg_[ch];
        }
      }
    }
    if (total != count_[c]) fail(where + "point count mismatch");
    if (count_[c] == 0 && (min_cost_[c].is_finite() || cell_lam_[c] != 0)) {
      fail(where + "empty cell must have infinite minimum and zero offset");
    }
    if (best != min_cost_[c] || arg != min_arg_[c]) {
      fail(where + "minCost " + min_cost_[c].to_string() + ", recomputed " + best.to_string());
    }
  }

  // Flush lists: each entry sits under a flagged ancestor, once; every marker is listed everywhere above it.
  std::vector<int> point_entries(static_cast<std::size_t>(np), 0);
  std::vector<int> cell_entries(static_cast<std::size_t>(cells), 0);
  auto is_ancestor = [&](int anc, int c) {
    for (int x = c; x >= 0; x = parent_[x]) {
      if (x == anc) return true;
    }
    return false;
  };
  for (int c = 0; c < cells; ++c) {
    const std::uint64_t bit = std::uint64_t{1} << level_[c];
    for (int e : flush_[c]) {
      if (e >= 0) {
        ++cell_entries[e];
        if (!(cell_mask_[e] & bit) || e == c || !is_ancestor(c, e)) {
          fail("cell " + std::to_string(c) + ": bad flush entry cell " + std::to_string(e));
        }
      } else {
        const int k = ~e;
        ++point_entries[k];
        if (!(point_mask_[k] & bit) || !is_ancestor(c, leaf_[k])) {
          fail("cell " + std::to_string(c) + ": bad flush entry point " + pid(k));
        }
      }
    }
  }
  for (int k = 0; k < np; ++k) {
    if (point_entries[k] != std::popcount(point_mask_[k])) fail("point " + pid(k) + ": flush flags out of sync");
    if (lam_[k] != 0 || reset_[k] != 0) {
      for (int x = leaf_[k]; x >= 0; x = parent_[x]) {
        if (!(point_mask_[k] & (std::uint64_t{1} << level_[x]))) {
          fail("point " + pid(k) + ": marker missing from flush list of cell " + std::to_string(x));
        }
      }
    }
  }
  for (int c = 0; c < cells; ++c) {
    if (cell_entries[c] != std::popcount(cell_mask_[c])) fail("cell " + std::to_string(c) + ": flush flags out of sync");
    if (cell_lam_[c] != 0 || cell_reset_[c] != 0) {
      for (int x = parent_[c]; x >= 0; x = parent_[x]) {
        if (!(cell_mask_[c] & (std::uint64_t{1} << level_[x]))) {
          fail("cell " + std::to_string(c) + ": marker missing from flush list of cell " + std::to_string(x));
        }
      }
    }
  }
  return report;
}

IndirectSolution run_fast(const CandidateInstance& inst, std::span<const WeightedPoint> points,
                          const FastOptions& options, FastRunStats* stats) {
  using clock = std::chrono::steady_clock;
  IndirectSolution out;
  const int m = static_cast<int>(inst.hseq.size());
  if (m == 0) return out;

  const auto t0 = clock::now();
  EngineState state(inst, points, options);
  const auto t1 = clock::now();
  auto check = [&](const char* when) {
    if (!options.check_invariants) return;
    const InvariantReport report = state.check_invariants();
    if (!report.ok()) {
      throw InternalError(std::string("fast engine invariant violated ") + when + ": " +
                          report.violations.front() + " (" + std::to_string(report.violations.size()) +
                          " violations)");
    }
  };
  check("after init");

  for (int i = 1; i <= m; ++i) {
    const FindResult found = state.find_min_cost(i);
    out.trace.delta.push_back(found.delta);
    out.trace.argmin.push_back(found.arg);
    out.trace.reset_snapshot.push_back(found.reset_index);
    if (found.delta.is_infinite()) break;
    state.reset_cost(i, found.delta.value());
    check(("after reset " + std::to_string(i)).c_str());
  }
  out.value = out.trace.delta.back();
  if (out.value.is_finite()) out.points = backtrack(out.trace);

  if (stats) {
    stats->build_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    stats->solve_ms = std::chrono::duration<double, std::milli>(clock::now() - t1).count();
    stats->cells = static_cast<std::size_t>(state.cutting().cell_count());
    stats->depth = state.cutting().depth();
    stats->r = state.cutting().r();
  }
  return out;
}

}  // namespace hphs
