#pragma once

#include <cstdint>

#include "hphs/instance_io.hpp"

namespace hphs {

struct GenOptions {
  int n = 10;
  int m = -1;                      // -1: same as n
  std::int64_t coord_range = 1000; // coordinates uniform in [-range, range]
  std::int64_t normal_range = 0;   // 0: min(coord_range, 1000)
  Weight weight_lo = 1;
  Weight weight_hi = 100;
  std::uint64_t seed = 0;
  bool ensure_feasible = false;
  int kappa = 0;  // > 0: half-plane 0 holds exactly its kappa deepest points
};

/// Each half-plane gets a random normal and the offset of the k-th largest
/// projection of the points, so it holds at least its k deepest points. k is
/// uniform in [1, n/2], or kappa + [0, n/2) when kappa is set. Without
/// ensure_feasible a half-plane is occasionally pushed past every point.
/// Output depends only on the options (64-bit Mersenne Twister, modular draws).
Instance generate(const GenOptions& options);

}  // namespace hphs
