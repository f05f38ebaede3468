#include "hphs/generate.hpp"

#include <algorithm>
#include <random>

namespace hphs {

namespace {

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

}  // namespace

Instance generate(const GenOptions& options) {
  const int n = options.n;
  const int m = options.m < 0 ? n : options.m;
  if (n < 1) throw InvalidInput("gen: n must be at least 1");
  if (m < 0) throw InvalidInput("gen: m must be non-negative");
  if (options.coord_range < 0 || options.coord_range > kCoordBound) {
    throw InvalidInput("gen: coordinate range must be in [0, 2^30]");
  }
  const std::int64_t normals =
      options.normal_range > 0 ? options.normal_range : std::clamp<std::int64_t>(options.coord_range, 1, 1000);
  if (normals > kCoordBound) throw InvalidInput("gen: normal range must be at most 2^30");
  if (options.weight_lo < 1 || options.weight_hi < options.weight_lo || options.weight_hi > kWeightBound) {
    throw InvalidInput("gen: weights must satisfy 1 <= lo <= hi <= 2^31");
  }
  if (options.kappa < 0 || options.kappa > n) throw InvalidInput("gen: kappa must be in [0, n]");

  std::mt19937_64 rng(options.seed);
  Instance out;
  for (int k = 0; k < n; ++k) {
    WeightedPoint p;
    p.id = k;
    p.x = draw(rng, -options.coord_range, options.coord_range);
    p.y = draw(rng, -options.coord_range, options.coord_range);
    p.w = draw(rng, options.weight_lo, options.weight_hi);
    out.points.push_back(p);
  }

  std::vector<std::int64_t> proj(static_cast<std::size_t>(n));
  const int half = std::max(1, n / 2);
  for (int k = 0; k < m; ++k) {
    HalfPlane h;
    h.id = k;
    do {
      h.a = draw(rng, -normals, normals);
      h.b = draw(rng, -normals, normals);
    } while (h.a == 0 && h.b == 0);
    for (int j = 0; j < n; ++j) proj[j] = h.a * out.points[j].x + h.b * out.points[j].y;
    std::sort(proj.begin(), proj.end(), std::greater<>());

    int depth = 0;
    if (options.kappa > 0) {
      depth = k == 0 ? options.kappa : options.kappa + static_cast<int>(draw(rng, 0, half - 1));
    } else {
      depth = static_cast<int>(draw(rng, 1, half));
    }
    depth = std::min(depth, n);
    h.c = proj[static_cast<std::size_t>(depth - 1)];
    // Roughly one instance in five gets a half-plane nobody hits.
    // ensure_feasible keeps the draw so both modes share one random stream.
    const bool empty = draw(rng, 0, 4 * std::int64_t{m} - 1) == 0;
    if (empty && !options.ensure_feasible && proj[0] < kOffsetBound) h.c = proj[0] + 1;
    out.halfplanes.push_back(h);
  }
  return out;
}

}  // namespace hphs
