#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hphs/geom.hpp"

namespace hphs {

enum class Engine { Reference, Fast };

std::string to_string(Engine engine);

struct SolveOptions {
  Engine engine = Engine::Fast;
  int r = 0;  // 0: ceil(sqrt(m)) per candidate
  int rho = 2;
  std::uint64_t seed = 0;  // candidate k builds its cutting with seed + k
  bool check_invariants = false;
  int threads = 1;  // 0: hardware concurrency
  bool keep_candidates = false;
};

struct CandidateReport {
  int arc_index = 0;  // position among the candidate arcs
  int point_id = 0;
  Weight arc_weight = 0;
  Cost value = Cost::infinite();  // W_alpha
  int hseq_size = 0;
  double build_ms = 0;
  double solve_ms = 0;
};

struct Solution {
  Weight total_weight = 0;
  std::vector<int> point_ids;  // ascending
  int kappa = 0;
  int candidate_count = 0;
  Engine engine = Engine::Fast;
  std::vector<CandidateReport> per_candidate;  // filled when keep_candidates
};

/// No subset of the points hits every half-plane.
class Infeasible : public std::runtime_error {
 public:
  explicit Infeasible(std::vector<int> unhit);
  const std::vector<int>& unhit() const { return unhit_; }

 private:
  std::vector<int> unhit_;
};

/// Minimum-weight subset of `points` hitting every half-plane. Point ids must
/// be a permutation of 0..n-1 and half-plane ids distinct. Throws
/// InvalidInput, Infeasible, or InternalError when the final check fails.
Solution solve(std::span<const WeightedPoint> points, std::span<const HalfPlane> halfplanes,
               const SolveOptions& options = {});

struct VerifyResult {
  bool ok = true;
  int first_violated = -1;  // half-plane id
  std::string problem;      // set when a selected id is unknown or repeated
};

VerifyResult verify(std::span<const WeightedPoint> points, std::span<const HalfPlane> halfplanes,
                    std::span<const int> point_ids);

}  // namespace hphs
