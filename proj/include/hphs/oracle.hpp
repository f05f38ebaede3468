#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hphs/geom.hpp"
#include "hphs/instance_io.hpp"
#include "hphs/reduction.hpp"

// Exhaustive and explicit ground truth for small instances. Nothing here is
// used by the solver itself.
namespace hphs::oracle {

/// An arc of a point other than p(alpha), cut down to the uncovered
/// positions 1..m of a candidate instance.
struct ExplicitInterval {
  int point_id = 0;
  int left = 1;   // 1-based, inclusive
  int right = 1;
  Weight weight = 0;
  int before = 0;  // rightmost position strictly left of `left`; 0 is the sentinel

  bool covers(int i) const { return left <= i && i <= right; }
};

struct ExplicitIntervalInstance {
  int m = 0;
  std::vector<ExplicitInterval> intervals;
};

/// Every arc of every point except p(alpha), minus those containing alpha,
/// mapped onto inst.hseq. Arcs covering no uncovered position are dropped.
/// `rows` and `points` are indexed by point id.
ExplicitIntervalInstance explicit_arcs(const CandidateInstance& inst, std::span<const HitRow> rows,
                                       std::span<const WeightedPoint> points);

struct IntervalCover {
  Cost value = Cost::of(0);
  std::vector<Cost> delta;  // delta[0] = 0, delta[i] = cheapest cover of positions 1..i
};

/// Left-to-right sweep keeping the costs of intervals alive at the current
/// position in an ordered multiset.
IntervalCover interval_cover_dp(const ExplicitIntervalInstance& inst);

struct HittingSet {
  Cost weight = Cost::infinite();
  std::vector<int> points;  // ascending ids
};

inline constexpr int kMaxBruteforcePoints = 20;
inline constexpr int kMaxCircularPoints = 12;

/// Branch and bound over the first unhit half-plane. Throws InvalidInput
/// beyond kMaxBruteforcePoints points.
HittingSet hitting_set_bruteforce(std::span<const WeightedPoint> points,
                                  std::span<const HalfPlane> halfplanes);

struct CircularCover {
  Cost weight = Cost::infinite();
  std::vector<Arc> arcs;
};

/// Minimum-weight set of arcs covering the whole circle. For each arc over
/// circle position 0, the rest of the circle is cut open and solved by a
/// plain quadratic DP over the arcs not containing it. Throws InvalidInput
/// beyond kMaxCircularPoints points or positions, and InternalError if the
/// recovered optimum uses two arcs of one point.
CircularCover circular_cover_bruteforce(std::span<const HitRow> rows, int circle_size,
                                        std::span<const WeightedPoint> points);

/// Every quantity of the reduction computed independently on one small
/// instance. The optimum weights must all agree.
struct ChainReport {
  bool feasible = false;
  Cost hitting_set = Cost::infinite();    // exhaustive over subsets of P
  Cost circular = Cost::infinite();       // exhaustive over arc covers
  Cost explicit_min = Cost::infinite();   // min over candidates of w(alpha) + W(A*_alpha)
  Cost indirect_min = Cost::infinite();   // min over candidates of w(alpha) + W_alpha
  Cost fast = Cost::infinite();           // solver, fast engine
  Cost reference = Cost::infinite();      // solver, reference engine
  std::vector<std::string> discrepancies;

  bool ok() const { return discrepancies.empty(); }
};

struct ChainOptions {
  std::uint64_t seed = 0;     // cutting seed for the fast engine
  bool inject_fault = false;  // report the fast solver one unit heavier
};

/// Also checks per candidate that W(P'_alpha) <= W_alpha <= W(A*_alpha) and
/// delta_i <= delta*_i, that solver outputs verify, and that the recovered
/// circular optimum's arc over b* is not inside another of its arcs.
ChainReport check_chain(const Instance& instance, const ChainOptions& options = {});

}  // namespace hphs::oracle
