#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hphs/dp_reference.hpp"
#include "hphs/fast_engine.hpp"
#include "support.hpp"

using namespace hphs;
using hphs::test::hp;
using hphs::test::pt;

namespace {

CandidateInstance two_step() {
  CandidateInstance inst;
  inst.p_alpha = 0;
  inst.hseq = {hp(0, 1, 0, 0), hp(1, 0, 1, 0)};
  inst.hseq_pos = {0, 1};
  inst.pids = {1, 2};
  return inst;
}

FastOptions checked() {
  FastOptions o;
  o.check_invariants = true;
  return o;
}

void same_trace(const IndirectSolution& a, const IndirectSolution& b) {
  CHECK(a.value == b.value);
  CHECK(a.points == b.points);
  CHECK(a.trace.delta == b.trace.delta);
  CHECK(a.trace.argmin == b.trace.argmin);
  CHECK(a.trace.reset_snapshot == b.trace.reset_snapshot);
}

}  // namespace

TEST_CASE("engine lines keep integer points off the line") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> d(-6, 6);
  for (int t = 0; t < 300; ++t) {
    HalfPlane h = hp(0, d(rng), d(rng), d(rng) * 3);
    if (h.a == 0 && h.b == 0) h.b = 1;
    const auto line = engine_lines(std::vector<HalfPlane>{h})[0];
    for (std::int64_t x = -10; x <= 10; ++x) {
      for (std::int64_t y = -10; y <= 10; ++y) {
        const int s = cutting::sign_at(line, x, y);
        CHECK(s != 0);
        CHECK((s > 0) == hits(pt(0, x, y), h));
      }
    }
  }
  // Offsets far outside the coordinate box are clamped without changing any side.
  const HalfPlane far = hp(0, 1, 1, -kOffsetBound);
  const auto line = engine_lines(std::vector<HalfPlane>{far})[0];
  CHECK(cutting::sign_at(line, -kCoordBound, -kCoordBound) > 0);
  CHECK(std::llabs(line.c) <= cutting::kLineOffsetBound);
}

TEST_CASE("default_r") {
  CHECK(default_r(0) == 1);
  CHECK(default_r(1) == 1);
  CHECK(default_r(10) == 4);
  CHECK(default_r(16) == 4);
  CHECK(default_r(17) == 5);
}

TEST_CASE("empty sequence") {
  CandidateInstance inst;
  inst.pids = {1};
  const std::vector<WeightedPoint> p{pt(0, 0, 0), pt(1, 0, 0)};
  const IndirectSolution s = run_fast(inst, p, checked());
  CHECK(s.value == Cost::of(0));
  CHECK(s.points.empty());
}

TEST_CASE("hand traces match the reference") {
  const std::vector<WeightedPoint> both{pt(0, -5, -5, 1), pt(1, 1, 1, 3), pt(2, -1, 1, 4)};
  const std::vector<WeightedPoint> chain{pt(0, -5, -5, 1), pt(1, 1, -1, 3), pt(2, -1, 1, 4)};
  const IndirectSolution a = run_fast(two_step(), both, checked());
  CHECK(a.value == Cost::of(3));
  same_trace(a, run_reference(two_step(), both));
  const IndirectSolution b = run_fast(two_step(), chain, checked());
  CHECK(b.value == Cost::of(7));
  CHECK(b.points == std::vector<int>{1, 2});
  same_trace(b, run_reference(two_step(), chain));
}

TEST_CASE("single point") {
  CandidateInstance inst;
  inst.hseq = {hp(0, 1, 0, 0)};
  inst.hseq_pos = {0};
  inst.pids = {1};
  const std::vector<WeightedPoint> p{pt(0, 9, 9), pt(1, 2, 3, 6)};
  EngineState state(inst, p, checked());
  CHECK(state.check_invariants().ok());
  CHECK(state.min_cost(state.cutting().root()) == Cost::of(6));
  const FindResult f = state.find_min_cost(1);
  CHECK(f.delta == Cost::of(6));
  CHECK(f.arg == 1);
  CHECK(f.reset_index == 0);
}

TEST_CASE("no point inside gives Infinite") {
  CandidateInstance inst;
  inst.hseq = {hp(0, 1, 0, 100)};
  inst.hseq_pos = {0};
  inst.pids = {1, 2};
  const std::vector<WeightedPoint> p{pt(0, 200, 0), pt(1, 0, 0), pt(2, 5, 5)};
  EngineState state(inst, p, checked());
  CHECK(state.find_min_cost(1).delta.is_infinite());
  CHECK(run_fast(inst, p, checked()).value.is_infinite());
}

TEST_CASE("a reset is visible to later queries") {
  // h1: x >= 0 hit by p1 only; h2: x <= -1 hit by p2 only.
  CandidateInstance inst;
  inst.hseq = {hp(0, 1, 0, 0), hp(1, -1, 0, 1)};
  inst.hseq_pos = {0, 1};
  inst.pids = {1, 2, 3};
  const std::vector<WeightedPoint> p{pt(0, 0, 50), pt(1, 4, 0, 10), pt(2, -4, 0, 2), pt(3, -7, 3, 5)};
  EngineState state(inst, p, checked());
  const FindResult f1 = state.find_min_cost(1);
  CHECK(f1.delta == Cost::of(10));
  state.reset_cost(1, 10);
  CHECK(state.check_invariants().ok());
  const FindResult f2 = state.find_min_cost(2);
  CHECK(f2.delta == Cost::of(12));
  CHECK(f2.arg == 2);
  CHECK(f2.reset_index == 1);
}

TEST_CASE("checker catches corrupted offsets") {
  const auto r = test::reduce(test::random_instance(60, 3, 1000));
  const Arc& a = r.candidates[0];
  const CandidateInstance inst = build_instance(a, r.circle, static_cast<int>(r.points.size()));
  REQUIRE(inst.hseq.size() > 4);
  REQUIRE(!inst.pids.empty());

  SUBCASE("fresh state is clean") {
    EngineState state(inst, r.points, checked());
    CHECK(state.check_invariants().ok());
  }
  SUBCASE("cell offset") {
    EngineState state(inst, r.points, checked());
    state.reset_cost(1, state.find_min_cost(1).delta.value());
    const int leaf = state.leaf_of(inst.pids[0]);
    state.corrupt_cell_lambda(leaf, 5);
    const InvariantReport rep = state.check_invariants();
    CHECK(!rep.ok());
    bool names_cell = false;
    for (const auto& v : rep.violations) names_cell = names_cell || v.find(std::to_string(leaf)) != std::string::npos;
    CHECK(names_cell);
  }
  SUBCASE("point offset") {
    EngineState state(inst, r.points, checked());
    state.corrupt_point_lambda(inst.pids.back(), -3);
    CHECK(!state.check_invariants().ok());
  }
}

TEST_CASE("invariants hold after every reset") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto r = test::reduce(test::random_instance(80 + static_cast<int>(seed) * 5, seed, seed % 3 ? 1000 : 6));
    for (std::size_t k = 0; k < r.candidates.size(); ++k) {
      const CandidateInstance inst = build_instance(r.candidates[k], r.circle, static_cast<int>(r.points.size()));
      FastOptions o = checked();
      o.seed = seed * 31 + k;
      CHECK_NOTHROW(run_fast(inst, r.points, o));
    }
  }
}

TEST_CASE("fast and reference traces agree exactly") {
  for (std::uint64_t seed = 100; seed < 250; ++seed) {
    const int n = 20 + static_cast<int>(seed % 7) * 25;
    const auto r = test::reduce(test::random_instance(n, seed, seed % 4 ? 100000 : 5));
    for (std::size_t k = 0; k < r.candidates.size(); ++k) {
      const CandidateInstance inst = build_instance(r.candidates[k], r.circle, static_cast<int>(r.points.size()));
      FastOptions o;
      o.seed = seed + k;
      same_trace(run_fast(inst, r.points, o), run_reference(inst, r.points));
    }
  }
}

TEST_CASE("other cutting parameters give the same trace") {
  const auto r = test::reduce(test::random_instance(150, 77, 1000));
  for (const Arc& a : r.candidates) {
    const CandidateInstance inst = build_instance(a, r.circle, static_cast<int>(r.points.size()));
    const IndirectSolution ref = run_reference(inst, r.points);
    for (int rr : {1, 3, 40}) {
      for (int rho : {2, 3, 5}) {
        FastOptions o;
        o.r = rr;
        o.rho = rho;
        o.check_invariants = rr == 3;
        same_trace(run_fast(inst, r.points, o), ref);
      }
    }
  }
}
