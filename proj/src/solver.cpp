#include "hphs/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "hphs/dp_reference.hpp"
#include "hphs/fast_engine.hpp"
#include "hphs/reduction.hpp"

namespace hphs {

std::string to_string(Engine engine) { return engine == Engine::Reference ? "reference" : "fast"; }

Infeasible::Infeasible(std::vector<int> unhit)
    : std::runtime_error([&] {
        std::string msg = "infeasible: no point hits half-plane";
        msg += unhit.size() == 1 ? "" : "s";
        for (std::size_t k = 0; k < unhit.size(); ++k) msg += (k ? ", " : " ") + std::to_string(unhit[k]);
        return msg;
      }()),
      unhit_(std::move(unhit)) {}

namespace {

struct CandidateResult {
  IndirectSolution indirect;
  CandidateReport report;
};

CandidateResult run_candidate(const Arc& alpha, int index, const CirclePoints& circle,
                              std::span<const WeightedPoint> points, const SolveOptions& options) {
  using clock = std::chrono::steady_clock;
  CandidateResult out;
  const CandidateInstance inst = build_instance(alpha, circle, static_cast<int>(points.size()));
  if (options.engine == Engine::Fast) {
    FastOptions fo;
    fo.r = options.r;
    fo.rho = options.rho;
    fo.seed = options.seed + static_cast<std::uint64_t>(index);
    fo.check_invariants = options.check_invariants;
    FastRunStats stats;
    out.indirect = run_fast(inst, points, fo, &stats);
    out.report.build_ms = stats.build_ms;
    out.report.solve_ms = stats.solve_ms;
  } else {
    const auto t0 = clock::now();
    out.indirect = run_reference(inst, points);
    out.report.solve_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  }
  out.report.arc_index = index;
  out.report.point_id = alpha.point_id;
  out.report.arc_weight = alpha.weight;
  out.report.value = out.indirect.value;
  out.report.hseq_size = static_cast<int>(inst.hseq.size());
  return out;
}

}  // namespace

Solution solve(std::span<const WeightedPoint> points, std::span<const HalfPlane> halfplanes,
               const SolveOptions& options) {
  validate_points(points);
  validate_halfplanes(halfplanes);
  if (options.rho < 2) throw InvalidInput("rho must be at least 2");
  if (options.r < 0) throw InvalidInput("r must be non-negative");

  std::vector<WeightedPoint> by_id(points.begin(), points.end());
  std::sort(by_id.begin(), by_id.end(), [](const auto& p, const auto& q) { return p.id < q.id; });

  Solution out;
  out.engine = options.engine;
  if (halfplanes.empty()) return out;
  if (by_id.empty()) {
    std::vector<int> unhit;
    for (const auto& h : halfplanes) unhit.push_back(h.id);
    std::sort(unhit.begin(), unhit.end());
    throw Infeasible(std::move(unhit));
  }

  const DedupResult dedup = dedup_halfplanes(halfplanes);
  {
    std::vector<int> unhit = feasibility_check(convex_hull(by_id), halfplanes);
    if (!unhit.empty()) {
      std::sort(unhit.begin(), unhit.end());
      throw Infeasible(std::move(unhit));
    }
  }

  const CirclePoints circle = build_circle_points(dedup.kept);
  const std::vector<HitRow> rows = hit_rows(by_id, circle);
  const BStar bstar = select_bstar(rows, circle.size());
  const std::vector<Arc> candidates = candidate_arcs(rows, by_id, bstar.index);
  out.kappa = bstar.kappa;
  out.candidate_count = static_cast<int>(candidates.size());

  std::vector<CandidateResult> results(candidates.size());
  int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(1, static_cast<int>(candidates.size())));
  if (threads == 1) {
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      results[k] = run_candidate(candidates[k], static_cast<int>(k), circle, by_id, options);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      for (std::size_t k; (k = next.fetch_add(1)) < candidates.size();) {
        try {
          results[k] = run_candidate(candidates[k], static_cast<int>(k), circle, by_id, options);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  int best = -1;
  Cost best_total = Cost::infinite();
  for (std::size_t k = 0; k < results.size(); ++k) {
    const Cost total = results[k].indirect.value.plus(candidates[k].weight);
    if (total < best_total) {
      best_total = total;
      best = static_cast<int>(k);
    }
  }
  if (best < 0) throw InternalError("solve: every candidate is infinite on a feasible instance");

  std::vector<int> chosen = results[static_cast<std::size_t>(best)].indirect.points;
  chosen.push_back(candidates[static_cast<std::size_t>(best)].point_id);
  std::sort(chosen.begin(), chosen.end());
  if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end()) {
    throw InternalError("solve: selected point repeated");
  }
  Weight total = 0;
  for (int id : chosen) total += by_id[static_cast<std::size_t>(id)].w;

  const VerifyResult check = verify(by_id, halfplanes, chosen);
  if (!check.ok) {
    throw InternalError("solve: result misses half-plane " + std::to_string(check.first_violated));
  }
  if (total != best_total.value()) {
    throw InternalError("solve: result weight " + std::to_string(total) + " differs from w(alpha) + W_alpha = " +
                        best_total.to_string());
  }

  out.total_weight = total;
  out.point_ids = std::move(chosen);
  if (options.keep_candidates) {
    for (auto& r : results) out.per_candidate.push_back(r.report);
  }
  return out;
}

VerifyResult verify(std::span<const WeightedPoint> points, std::span<const HalfPlane> halfplanes,
                    std::span<const int> point_ids) {
  VerifyResult out;
  std::unordered_map<int, const WeightedPoint*> index;
  for (const auto& p : points) index.emplace(p.id, &p);
  std::vector<const WeightedPoint*> selected;
  std::vector<int> seen(point_ids.begin(), point_ids.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    out.ok = false;
    out.problem = "repeated point id " + std::to_string(*std::adjacent_find(seen.begin(), seen.end()));
    return out;
  }
  for (int id : point_ids) {
    auto it = index.find(id);
    if (it == index.end()) {
      out.ok = false;
      out.problem = "unknown point id " + std::to_string(id);
      return out;
    }
    selected.push_back(it->second);
  }
  for (const auto& h : halfplanes) {
    const bool hit = std::any_of(selected.begin(), selected.end(), [&](const auto* p) { return hits(*p, h); });
    if (!hit) {
      out.ok = false;
      out.first_violated = h.id;
      return out;
    }
  }
  return out;
}

}  // namespace hphs
