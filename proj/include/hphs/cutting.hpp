#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hphs/geom.hpp"
#include "hphs/types.hpp"

namespace hphs::cutting {

/// The line a*x + b*y = c. Its positive side is a*x + b*y - c >= 0.
///
/// Exactness of every predicate below in 128-bit arithmetic requires
/// |a|, |b| <= 2^31 and |c| <= 2^62 + 4; build() enforces it.
struct Line {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
};

inline constexpr std::int64_t kLineNormalBound = std::int64_t{1} << 31;
inline constexpr std::int64_t kLineOffsetBound = (std::int64_t{1} << 62) + 4;

/// Rational point (x/d, y/d) with d > 0, always the crossing of two lines.
/// fx, fy are the nearest-double approximations used to filter sign tests.
struct Vertex {
  Int128 x = 0;
  Int128 y = 0;
  Int128 d = 1;
  double fx = 0;
  double fy = 0;
};

Vertex intersect(const Line& l1, const Line& l2);

inline int exact_sign_at(const Line& l, const Vertex& v) {
  return sign_of(Int128{l.a} * v.x + Int128{l.b} * v.y - Int128{l.c} * v.d);
}

/// Sign of a*x + b*y - c at the vertex, exact. The double evaluation carries
/// a relative error below 2^-50 of the summed magnitudes; only values inside
/// a 2^-48 band fall through to integer arithmetic.
inline int sign_at(const Line& l, const Vertex& v) {
  const double ax = static_cast<double>(l.a) * v.fx;
  const double by = static_cast<double>(l.b) * v.fy;
  const double c = static_cast<double>(l.c);
  const double val = ax + by - c;
  const double band = (std::fabs(ax) + std::fabs(by) + std::fabs(c)) * 0x1p-48;
  if (val > band) return 1;
  if (val < -band) return -1;
  return exact_sign_at(l, v);
}

inline int sign_at(const Line& l, std::int64_t x, std::int64_t y) {
  return sign_of(Int128{l.a} * x + Int128{l.b} * y - Int128{l.c});
}

/// The region lies on side * (a*x + b*y - c) >= 0 of `line`.
struct Edge {
  int line = 0;
  int side = 1;
};

/// Convex polygon, counterclockwise. edges[i] runs from vertices[i] to
/// vertices[i+1] and every edge is supported by a line of the cutting.
struct Polygon {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

struct Cell {
  int id = 0;
  int level = 0;
  int parent = -1;
  std::vector<int> children;
  std::vector<int> conflict;  // input lines crossing the interior, ascending
  Polygon region;
};

enum class Classification { FullyInside, FullyOutside, Crossed };

struct Options {
  int r = 1;
  int rho = 2;
  std::uint64_t seed = 0;
  int max_children = 64;
  int split_candidates = 4;  // random lines tried per binary split
  int max_attempts = 24;     // refinement retries per cell, candidates double each time
};

class HierarchicalCutting {
 public:
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(int id) const { return cells_[static_cast<std::size_t>(id)]; }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  int root() const { return 0; }
  int depth() const { return depth_; }
  int rho() const { return rho_; }
  int r() const { return r_; }
  bool is_leaf(int id) const { return cell(id).level == depth_; }

  /// Input lines first, then the three lines bounding the working region.
  const std::vector<Line>& lines() const { return lines_; }
  int input_line_count() const { return input_lines_; }

  /// Cell ids of level i, contiguous and ascending.
  std::span<const int> level(int i) const;

  int max_children() const { return max_children_; }

 private:
  friend HierarchicalCutting build(std::span<const Line> lines,
                                   std::span<const WeightedPoint> points, const Options& options);

  std::vector<Cell> cells_;
  std::vector<int> level_start_;  // level i occupies ids [level_start_[i], level_start_[i+1])
  std::vector<int> level_ids_;
  std::vector<Line> lines_;
  int input_lines_ = 0;
  int depth_ = 0;
  int rho_ = 2;
  int r_ = 1;
  int max_children_ = 0;
};

/// Smallest k with rho^k >= r.
int depth_for(int r, int rho);

/// Builds the hierarchy over `lines`. The working region is a triangle
/// strictly containing every point of `points`.
///
/// Each level-i cell is refined by repeated binary splits along random
/// conflict lines until every piece is crossed by at most n / rho^(i+1)
/// lines; a cell already meeting that bound gets one identical child.
/// Throws InternalError when a cell cannot be refined within
/// max_children pieces after max_attempts tries.
HierarchicalCutting build(std::span<const Line> lines, std::span<const WeightedPoint> points,
                          const Options& options);

bool contains(const Polygon& region, const std::vector<Line>& lines, std::int64_t x,
              std::int64_t y);

/// Leaf containing (x, y), ties going to the smallest child id at every
/// level; -1 when the point is outside the working region.
int locate(const HierarchicalCutting& cutting, std::int64_t x, std::int64_t y);

/// Cells from `cell` up to the root, inclusive.
std::vector<int> ancestors(const HierarchicalCutting& cutting, int cell);

/// Closed semantics: a region touching the line from one side is fully on that side.
Classification classify(const Polygon& region, const Line& line);

inline Classification classify(const HierarchicalCutting& cutting, int cell, const Line& line) {
  return classify(cutting.cell(cell).region, line);
}

/// Per input line, the cells whose conflict list holds it, split into leaf
/// cells and internal cells. Compressed rows, ascending cell ids.
struct PhiLists {
  std::vector<int> leaf_offsets;
  std::vector<int> leaf_cells;
  std::vector<int> internal_offsets;
  std::vector<int> internal_cells;

  std::span<const int> leaves(int line) const {
    return {leaf_cells.data() + leaf_offsets[line],
            static_cast<std::size_t>(leaf_offsets[line + 1] - leaf_offsets[line])};
  }
  std::span<const int> internals(int line) const {
    return {internal_cells.data() + internal_offsets[line],
            static_cast<std::size_t>(internal_offsets[line + 1] - internal_offsets[line])};
  }
  std::size_t total() const { return leaf_cells.size() + internal_cells.size(); }
};

PhiLists phi_lists(const HierarchicalCutting& cutting);

struct StructureReport {
  std::vector<std::string> problems;
  std::size_t cells = 0;
  std::size_t conflict_total = 0;
  int widest_family = 0;  // most children of a single cell

  bool ok() const { return problems.empty(); }
};

/// Exhaustive validation: conflict lists recomputed against every line,
/// per-level conflict bound, children inside the parent with pairwise
/// disjoint interiors and (when exact_areas) exactly the parent's area.
StructureReport verify_structure(const HierarchicalCutting& cutting, bool exact_areas = true);

}  // namespace hphs::cutting
