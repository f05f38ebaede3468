#include <algorithm>
#include <string>

#include "hphs/dp_reference.hpp"
#include "hphs/oracle.hpp"
#include "hphs/solver.hpp"

namespace hphs::oracle {

namespace {

Cost solver_weight(const Instance& instance, Engine engine, std::uint64_t seed, ChainReport& report) {
  SolveOptions opts;
  opts.engine = engine;
  opts.seed = seed;
  const std::string name = to_string(engine);
  try {
    const Solution s = solve(instance.points, instance.halfplanes, opts);
    const VerifyResult v = verify(instance.points, instance.halfplanes, s.point_ids);
    if (!v.ok) report.discrepancies.push_back(name + " solution misses half-plane " + std::to_string(v.first_violated));
    return Cost::of(s.total_weight);
  } catch (const Infeasible&) {
    return Cost::infinite();
  }
}

void expect_equal(ChainReport& report, const char* what, Cost got, Cost want) {
  if (got != want) {
    report.discrepancies.push_back(std::string(what) + " = " + got.to_string() + ", exhaustive hitting set = " +
                                   want.to_string());
  }
}

}  // namespace

ChainReport check_chain(const Instance& instance, const ChainOptions& options) {
  ChainReport report;
  std::vector<WeightedPoint> points = instance.points;
  std::sort(points.begin(), points.end(), [](const auto& p, const auto& q) { return p.id < q.id; });

  const HittingSet exhaustive = hitting_set_bruteforce(points, instance.halfplanes);
  report.hitting_set = exhaustive.weight;
  report.feasible = exhaustive.weight.is_finite();

  report.fast = solver_weight(instance, Engine::Fast, options.seed, report);
  if (options.inject_fault) report.fast = report.fast.plus(1);
  report.reference = solver_weight(instance, Engine::Reference, options.seed, report);
  expect_equal(report, "fast solver", report.fast, report.hitting_set);
  expect_equal(report, "reference solver", report.reference, report.hitting_set);
  if (!report.feasible || instance.halfplanes.empty()) {
    report.circular = report.explicit_min = report.indirect_min = report.hitting_set;
    return report;
  }

  const DedupResult dedup = dedup_halfplanes(instance.halfplanes);
  const CirclePoints circle = build_circle_points(dedup.kept);
  const std::vector<HitRow> rows = hit_rows(points, circle);
  const CircularCover cover = circular_cover_bruteforce(rows, circle.size(), points);
  report.circular = cover.weight;
  expect_equal(report, "circular cover", report.circular, report.hitting_set);

  const BStar bstar = select_bstar(rows, circle.size());
  for (const Arc& a : cover.arcs) {
    if (!a.covers(bstar.index)) continue;
    for (const Arc& other : cover.arcs) {
      if (&other != &a && other.contains(a)) {
        report.discrepancies.push_back("optimal cover has the arc over b* inside another arc");
      }
    }
    break;
  }

  for (const Arc& alpha : candidate_arcs(rows, points, bstar.index)) {
    const CandidateInstance inst = build_instance(alpha, circle, static_cast<int>(points.size()));
    const IntervalCover explicit_dp = interval_cover_dp(explicit_arcs(inst, rows, points));
    const IndirectSolution indirect = run_reference(inst, points);
    report.explicit_min = std::min(report.explicit_min, explicit_dp.value.plus(alpha.weight));
    report.indirect_min = std::min(report.indirect_min, indirect.value.plus(alpha.weight));

    const std::string tag = "candidate of point " + std::to_string(alpha.point_id) + ": ";
    if (indirect.value > explicit_dp.value) {
      report.discrepancies.push_back(tag + "W_alpha " + indirect.value.to_string() + " > W(A*_alpha) " +
                                     explicit_dp.value.to_string());
    }
    for (int i = 1; i <= indirect.trace.iterations(); ++i) {
      if (indirect.trace.delta[i] > explicit_dp.delta[static_cast<std::size_t>(i)]) {
        report.discrepancies.push_back(tag + "delta_" + std::to_string(i) + " exceeds delta*_" + std::to_string(i));
        break;
      }
    }
    if (indirect.value.is_finite()) {
      Weight sum = 0;
      for (int id : indirect.points) sum += points[static_cast<std::size_t>(id)].w;
      if (sum > indirect.value.value()) {
        report.discrepancies.push_back(tag + "W(P'_alpha) " + std::to_string(sum) + " > W_alpha " +
                                       indirect.value.to_string());
      }
    }
  }
  expect_equal(report, "min of w(alpha) + W(A*_alpha)", report.explicit_min, report.hitting_set);
  expect_equal(report, "min of w(alpha) + W_alpha", report.indirect_min, report.hitting_set);
  return report;
}

}  // namespace hphs::oracle
