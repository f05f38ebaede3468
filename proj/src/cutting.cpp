#include "hphs/cutting.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hphs::cutting {

Vertex intersect(const Line& l1, const Line& l2) {
  Int128 d = Int128{l1.a} * l2.b - Int128{l2.a} * l1.b;
  Int128 x = Int128{l1.c} * l2.b - Int128{l2.c} * l1.b;
  Int128 y = Int128{l1.a} * l2.c - Int128{l2.a} * l1.c;
  if (d == 0) throw InternalError("cutting: intersecting parallel lines");
  if (d < 0) {
    d = -d;
    x = -x;
    y = -y;
  }
  const double fd = static_cast<double>(d);
  return Vertex{x, y, d, static_cast<double>(x) / fd, static_cast<double>(y) / fd};
}

std::span<const int> HierarchicalCutting::level(int i) const {
  const int lo = level_start_[static_cast<std::size_t>(i)];
  const int hi = level_start_[static_cast<std::size_t>(i) + 1];
  return {level_ids_.data() + lo, static_cast<std::size_t>(hi - lo)};
}

int depth_for(int r, int rho) {
  if (r < 1 || rho < 2) throw InvalidInput("cutting: need r >= 1 and rho >= 2");
  int k = 0;
  std::int64_t power = 1;
  while (power < r) {
    power *= rho;
    ++k;
  }
  return k;
}

Classification classify(const Polygon& region, const Line& line) {
  bool pos = false;
  bool neg = false;
  for (const auto& v : region.vertices) {
    const int s = sign_at(line, v);
    pos |= s > 0;
    neg |= s < 0;
    if (pos && neg) return Classification::Crossed;
  }
  return neg ? Classification::FullyOutside : Classification::FullyInside;
}

bool contains(const Polygon& region, const std::vector<Line>& lines, std::int64_t x,
              std::int64_t y) {
  for (const auto& e : region.edges) {
    if (e.side * sign_at(lines[static_cast<std::size_t>(e.line)], x, y) < 0) return false;
  }
  return true;
}

namespace {

// Both halves of a polygon cut by a line crossing its interior. Vertex
// indices refer to pts: the parent's vertices followed by the crossings.
struct SplitGeometry {
  std::vector<Vertex> pts;
  std::vector<int> idx[2];
  std::vector<Edge> edges[2];
  std::vector<int> sign;
  std::vector<int> cross;
  std::vector<int> shared;  // on the cutting line
  std::vector<int> own[2];  // strictly inside one half
};

void split_geometry(const Polygon& q, const std::vector<Line>& lines, int li, SplitGeometry& g) {
  const Line& l = lines[static_cast<std::size_t>(li)];
  const std::size_t v = q.vertices.size();
  g.sign.resize(v);
  for (std::size_t j = 0; j < v; ++j) g.sign[j] = sign_at(l, q.vertices[j]);
  const auto& s = g.sign;

  g.pts.assign(q.vertices.begin(), q.vertices.end());
  g.cross.assign(v, -1);
  for (std::size_t j = 0; j < v; ++j) {
    const std::size_t k = (j + 1) % v;
    if (s[j] * s[k] < 0) {
      g.cross[j] = static_cast<int>(g.pts.size());
      g.pts.push_back(intersect(lines[static_cast<std::size_t>(q.edges[j].line)], l));
    }
  }
  g.shared.clear();
  g.own[0].clear();
  g.own[1].clear();
  for (std::size_t j = 0; j < v; ++j) {
    if (s[j] == 0) {
      g.shared.push_back(static_cast<int>(j));
    } else {
      g.own[s[j] > 0 ? 0 : 1].push_back(static_cast<int>(j));
    }
  }
  for (std::size_t j = v; j < g.pts.size(); ++j) g.shared.push_back(static_cast<int>(j));

  for (int half = 0; half < 2; ++half) {
    const int t = half == 0 ? 1 : -1;
    auto& idx = g.idx[half];
    auto& edges = g.edges[half];
    idx.clear();
    edges.clear();
    for (std::size_t j = 0; j < v; ++j) {
      const std::size_t k = (j + 1) % v;
      const int sj = t * s[j];
      const int sk = t * s[k];
      const Edge& e = q.edges[j];
      if (sj >= 0) {
        idx.push_back(static_cast<int>(j));
        if (sk < 0) {
          if (sj > 0) {
            edges.push_back(e);
            idx.push_back(g.cross[j]);
          }
          edges.push_back(Edge{li, t});
        } else {
          edges.push_back(e);
        }
      } else if (sk > 0) {
        idx.push_back(g.cross[j]);
        edges.push_back(e);
      }
    }
  }
}

struct Piece {
  Polygon region;
  std::vector<int> conflict;
};

// Which halves of the split the line crosses: bit 0 the positive half, bit 1
// the negative. Vertices on the cut belong to both halves and go first.
int crossing_mask(const SplitGeometry& g, const Line& h) {
  bool shared_pos = false;
  bool shared_neg = false;
  for (int id : g.shared) {
    const int s = sign_at(h, g.pts[static_cast<std::size_t>(id)]);
    shared_pos |= s > 0;
    shared_neg |= s < 0;
  }
  if (shared_pos && shared_neg) return 3;
  int mask = 0;
  for (int half = 0; half < 2; ++half) {
    bool p = shared_pos;
    bool n = shared_neg;
    for (int id : g.own[half]) {
      const int s = sign_at(h, g.pts[static_cast<std::size_t>(id)]);
      p |= s > 0;
      n |= s < 0;
      if (p && n) {
        mask |= 1 << half;
        break;
      }
    }
  }
  return mask;
}

class Refiner {
 public:
  Refiner(const std::vector<Line>& lines, int n, std::mt19937_64& rng)
      : lines_(lines), n_(n), rng_(rng) {}

  // Pieces whose conflict lists all satisfy |L| * power <= n, or nullopt
  // once more than max_children pieces would be needed.
  std::optional<std::vector<Piece>> refine(const Piece& cell, std::int64_t power,
                                           int candidates, int max_children) {
    std::vector<Piece> pieces{cell};
    for (;;) {
      int worst = -1;
      for (std::size_t j = 0; j < pieces.size(); ++j) {
        if (!within(pieces[j].conflict.size(), power)) {
          if (worst < 0 || pieces[j].conflict.size() > pieces[static_cast<std::size_t>(worst)].conflict.size()) {
            worst = static_cast<int>(j);
          }
        }
      }
      if (worst < 0) return pieces;
      if (static_cast<int>(pieces.size()) >= max_children) return std::nullopt;
      Piece pos;
      Piece neg;
      const Piece& q = pieces[static_cast<std::size_t>(worst)];
      split(q, choose(q, candidates), pos, neg);
      pieces[static_cast<std::size_t>(worst)] = std::move(pos);
      pieces.push_back(std::move(neg));
    }
  }

  bool within(std::size_t size, std::int64_t power) const {
    return Int128{static_cast<std::int64_t>(size)} * power <= n_;
  }

 private:
  // Among sampled conflict lines, the one whose larger half has the fewest
  // conflicts. Long lists are scored on a random subsample of themselves.
  int choose(const Piece& q, int candidates) {
    const std::size_t size = q.conflict.size();
    tries_.clear();
    if (static_cast<std::size_t>(candidates) >= size) {
      tries_ = q.conflict;
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, size - 1);
      for (int t = 0; t < candidates; ++t) tries_.push_back(q.conflict[pick(rng_)]);
    }
    if (tries_.size() == 1) return tries_.front();
    std::span<const int> probe = q.conflict;
    if (size > 4 * kProbe) {
      probe_.clear();
      std::uniform_int_distribution<std::size_t> pick(0, size - 1);
      for (std::size_t t = 0; t < kProbe; ++t) probe_.push_back(q.conflict[pick(rng_)]);
      probe = probe_;
    }
    std::size_t best_score = probe.size() + 1;
    int best = tries_.front();
    for (int li : tries_) {
      split_geometry(q.region, lines_, li, geometry_);
      std::size_t count[2] = {0, 0};
      bool beaten = false;
      for (int line : probe) {
        if (line == li) continue;
        const int mask = crossing_mask(geometry_, lines_[static_cast<std::size_t>(line)]);
        count[0] += mask & 1;
        count[1] += (mask >> 1) & 1;
        if (std::max(count[0], count[1]) >= best_score) {
          beaten = true;
          break;
        }
      }
      if (!beaten) {
        best_score = std::max(count[0], count[1]);
        best = li;
      }
    }
    return best;
  }

  void split(const Piece& q, int li, Piece& pos, Piece& neg) {
    split_geometry(q.region, lines_, li, geometry_);
    Piece* out[2] = {&pos, &neg};
    for (int half = 0; half < 2; ++half) {
      out[half]->region.vertices.clear();
      for (int id : geometry_.idx[half]) {
        out[half]->region.vertices.push_back(geometry_.pts[static_cast<std::size_t>(id)]);
      }
      out[half]->region.edges = geometry_.edges[half];
    }
    for (int line : q.conflict) {
      if (line == li) continue;
      const int mask = crossing_mask(geometry_, lines_[static_cast<std::size_t>(line)]);
      if (mask & 1) pos.conflict.push_back(line);
      if (mask & 2) neg.conflict.push_back(line);
    }
  }

  const std::vector<Line>& lines_;
  int n_;
  std::mt19937_64& rng_;
  static constexpr std::size_t kProbe = 64;

  SplitGeometry geometry_;
  std::vector<int> tries_;
  std::vector<int> probe_;
};

void check_line(const Line& l) {
  if ((l.a == 0 && l.b == 0) || std::llabs(l.a) > kLineNormalBound ||
      std::llabs(l.b) > kLineNormalBound || l.c > kLineOffsetBound || l.c < -kLineOffsetBound) {
    throw InvalidInput("cutting: line coefficients out of range");
  }
}

}  // namespace

HierarchicalCutting build(std::span<const Line> lines, std::span<const WeightedPoint> points,
                          const Options& options) {
  HierarchicalCutting out;
  const int n = static_cast<int>(lines.size());
  if (options.max_children < 1 || options.split_candidates < 1 || options.max_attempts < 1) {
    throw InvalidInput("cutting: refinement limits must be positive");
  }
  out.depth_ = depth_for(options.r, options.rho);
  out.rho_ = options.rho;
  out.r_ = options.r;
  out.input_lines_ = n;
  for (const auto& l : lines) check_line(l);
  out.lines_.assign(lines.begin(), lines.end());

  // Bounding triangle x >= lox, y >= loy, x + y <= s, strictly around the points.
  std::int64_t minx = 0, miny = 0, maxx = 0, maxy = 0;
  if (!points.empty()) {
    minx = maxx = points[0].x;
    miny = maxy = points[0].y;
    for (const auto& p : points) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
  }
  const std::int64_t lox = minx - 1;
  const std::int64_t loy = miny - 1;
  const std::int64_t s = maxx + maxy + 1;
  const int left = n;
  const int bottom = n + 1;
  const int diagonal = n + 2;
  out.lines_.push_back(Line{1, 0, lox});
  out.lines_.push_back(Line{0, 1, loy});
  out.lines_.push_back(Line{-1, -1, -s});

  Cell root;
  root.id = 0;
  root.level = 0;
  const auto& all = out.lines_;
  root.region.vertices = {intersect(all[left], all[bottom]), intersect(all[bottom], all[diagonal]),
                          intersect(all[diagonal], all[left])};
  root.region.edges = {Edge{bottom, 1}, Edge{diagonal, 1}, Edge{left, 1}};
  for (int li = 0; li < n; ++li) {
    if (classify(root.region, all[static_cast<std::size_t>(li)]) == Classification::Crossed) {
      root.conflict.push_back(li);
    }
  }
  out.cells_.push_back(std::move(root));
  out.level_start_.push_back(0);

  std::mt19937_64 rng(options.seed);
  Refiner refiner(out.lines_, n, rng);
  std::int64_t power = 1;
  for (int level = 0; level < out.depth_; ++level) {
    power *= options.rho;
    const int lo = out.level_start_.back();
    const int hi = out.cell_count();
    out.level_start_.push_back(hi);
    for (int id = lo; id < hi; ++id) {
      Piece cell{out.cells_[static_cast<std::size_t>(id)].region,
                 out.cells_[static_cast<std::size_t>(id)].conflict};
      std::vector<Piece> pieces;
      if (refiner.within(cell.conflict.size(), power)) {
        pieces.push_back(std::move(cell));
      } else {
        int candidates = options.split_candidates;
        for (int attempt = 0;; ++attempt) {
          if (attempt == options.max_attempts) {
            throw InternalError("cutting: cell " + std::to_string(id) + " at level " +
                                std::to_string(level) + " not refined within " +
                                std::to_string(options.max_children) + " children");
          }
          auto result = refiner.refine(cell, power, candidates, options.max_children);
          if (result) {
            pieces = std::move(*result);
            break;
          }
          candidates = std::min(candidates * 2, std::max(n, 1));
        }
      }
      for (auto& piece : pieces) {
        std::sort(piece.conflict.begin(), piece.conflict.end());
        Cell child;
        child.id = out.cell_count();
        child.level = level + 1;
        child.parent = id;
        child.conflict = std::move(piece.conflict);
        child.region = std::move(piece.region);
        out.cells_[static_cast<std::size_t>(id)].children.push_back(child.id);
        out.cells_.push_back(std::move(child));
      }
      out.max_children_ =
          std::max(out.max_children_, static_cast<int>(out.cells_[static_cast<std::size_t>(id)].children.size()));
    }
  }
  out.level_start_.push_back(out.cell_count());
  out.level_ids_.resize(out.cells_.size());
  std::iota(out.level_ids_.begin(), out.level_ids_.end(), 0);
  return out;
}

int locate(const HierarchicalCutting& cutting, std::int64_t x, std::int64_t y) {
  const auto& lines = cutting.lines();
  int cur = cutting.root();
  if (!contains(cutting.cell(cur).region, lines, x, y)) return -1;
  while (!cutting.cell(cur).children.empty()) {
    int next = -1;
    for (int child : cutting.cell(cur).children) {
      if (contains(cutting.cell(child).region, lines, x, y)) {
        next = child;
        break;
      }
    }
    if (next < 0) throw InternalError("locate: no child of cell " + std::to_string(cur) + " holds the point");
    cur = next;
  }
  return cur;
}

std::vector<int> ancestors(const HierarchicalCutting& cutting, int cell) {
  std::vector<int> path;
  for (int c = cell; c >= 0; c = cutting.cell(c).parent) path.push_back(c);
  return path;
}

PhiLists phi_lists(const HierarchicalCutting& cutting) {
  const int n = cutting.input_line_count();
  PhiLists phi;
  phi.leaf_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  phi.internal_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& c : cutting.cells()) {
    auto& offsets = cutting.is_leaf(c.id) ? phi.leaf_offsets : phi.internal_offsets;
    for (int line : c.conflict) ++offsets[static_cast<std::size_t>(line) + 1];
  }
  for (int i = 0; i < n; ++i) {
    phi.leaf_offsets[i + 1] += phi.leaf_offsets[i];
    phi.internal_offsets[i + 1] += phi.internal_offsets[i];
  }
  phi.leaf_cells.resize(static_cast<std::size_t>(phi.leaf_offsets.back()));
  phi.internal_cells.resize(static_cast<std::size_t>(phi.internal_offsets.back()));
  std::vector<int> leaf_fill(phi.leaf_offsets.begin(), phi.leaf_offsets.end() - 1);
  std::vector<int> internal_fill(phi.internal_offsets.begin(), phi.internal_offsets.end() - 1);
  for (const auto& c : cutting.cells()) {
    const bool leaf = cutting.is_leaf(c.id);
    for (int line : c.conflict) {
      if (leaf) {
        phi.leaf_cells[static_cast<std::size_t>(leaf_fill[line]++)] = c.id;
      } else {
        phi.internal_cells[static_cast<std::size_t>(internal_fill[line]++)] = c.id;
      }
    }
  }
  return phi;
}

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int big(Int128 v) {
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  cpp_int out = static_cast<std::uint64_t>(u >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(u);
  return negative ? cpp_int(-out) : out;
}

cpp_rational twice_area(const Polygon& poly) {
  cpp_rational sum = 0;
  const std::size_t v = poly.vertices.size();
  for (std::size_t j = 0; j < v; ++j) {
    const Vertex& p = poly.vertices[j];
    const Vertex& q = poly.vertices[(j + 1) % v];
    const cpp_rational px(big(p.x), big(p.d));
    const cpp_rational py(big(p.y), big(p.d));
    const cpp_rational qx(big(q.x), big(q.d));
    const cpp_rational qy(big(q.y), big(q.d));
    sum += px * qy - qx * py;
  }
  return sum;
}

// Some edge of a has every vertex of b on its closed outer side.
bool separated_by_edge_of(const Polygon& a, const Polygon& b, const std::vector<Line>& lines) {
  for (const auto& e : a.edges) {
    const Line& l = lines[static_cast<std::size_t>(e.line)];
    bool all_outside = true;
    for (const auto& v : b.vertices) {
      if (e.side * sign_at(l, v) > 0) {
        all_outside = false;
        break;
      }
    }
    if (all_outside) return true;
  }
  return false;
}

}  // namespace

StructureReport verify_structure(const HierarchicalCutting& cutting, bool exact_areas) {
  StructureReport report;
  const auto& lines = cutting.lines();
  const int n = cutting.input_line_count();
  report.cells = cutting.cells().size();
  auto fail = [&](int cell, const std::string& what) {
    report.problems.push_back("cell " + std::to_string(cell) + ": " + what);
  };

  for (const auto& c : cutting.cells()) {
    report.conflict_total += c.conflict.size();
    report.widest_family = std::max(report.widest_family, static_cast<int>(c.children.size()));
    const auto& poly = c.region;
    if (poly.vertices.size() < 3 || poly.vertices.size() != poly.edges.size()) {
      fail(c.id, "malformed polygon");
      continue;
    }
    const std::size_t v = poly.vertices.size();
    for (std::size_t j = 0; j < v; ++j) {
      const Vertex& vj = poly.vertices[j];
      const Line& in = lines[static_cast<std::size_t>(poly.edges[(j + v - 1) % v].line)];
      const Line& out = lines[static_cast<std::size_t>(poly.edges[j].line)];
      if (vj.d <= 0 || exact_sign_at(in, vj) != 0 || exact_sign_at(out, vj) != 0) {
        fail(c.id, "vertex " + std::to_string(j) + " off its supporting lines");
      }
      for (const auto& e : poly.edges) {
        if (e.side * sign_at(lines[static_cast<std::size_t>(e.line)], vj) < 0) {
          fail(c.id, "vertex " + std::to_string(j) + " violates an edge");
        }
      }
    }

    // Conflict list against every input line.
    std::vector<int> expected;
    for (int li = 0; li < n; ++li) {
      if (classify(poly, lines[static_cast<std::size_t>(li)]) == Classification::Crossed) expected.push_back(li);
    }
    if (expected != c.conflict) fail(c.id, "conflict list differs from recount");
    Int128 power = 1;
    for (int i = 0; i < c.level; ++i) power *= cutting.rho();
    if (Int128{static_cast<std::int64_t>(c.conflict.size())} * power > n) {
      fail(c.id, "conflict size " + std::to_string(c.conflict.size()) + " above bound at level " +
                     std::to_string(c.level));
    }

    if (c.level < cutting.depth() && c.children.empty()) fail(c.id, "internal cell without children");
    if (c.level == cutting.depth() && !c.children.empty()) fail(c.id, "leaf with children");
    if (exact_areas && twice_area(poly) <= 0) fail(c.id, "non-positive area");
    if (c.children.empty()) continue;

    cpp_rational child_area = 0;
    for (std::size_t a = 0; a < c.children.size(); ++a) {
      const Cell& ca = cutting.cell(c.children[a]);
      if (ca.parent != c.id || ca.level != c.level + 1) fail(ca.id, "inconsistent parent link");
      for (const auto& vtx : ca.region.vertices) {
        for (const auto& e : poly.edges) {
          if (e.side * sign_at(lines[static_cast<std::size_t>(e.line)], vtx) < 0) {
            fail(ca.id, "vertex outside parent " + std::to_string(c.id));
          }
        }
      }
      for (std::size_t b = a + 1; b < c.children.size(); ++b) {
        const Cell& cb = cutting.cell(c.children[b]);
        if (!separated_by_edge_of(ca.region, cb.region, lines) &&
            !separated_by_edge_of(cb.region, ca.region, lines)) {
          fail(ca.id, "interior overlaps sibling " + std::to_string(cb.id));
        }
      }
      if (exact_areas) child_area += twice_area(ca.region);
    }
    if (exact_areas && child_area != twice_area(poly)) fail(c.id, "children do not cover the cell");
  }
  return report;
}

}  // namespace hphs::cutting
