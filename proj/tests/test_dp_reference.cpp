#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hphs/dp_reference.hpp"
#include "support.hpp"

using namespace hphs;
using hphs::test::hp;
using hphs::test::pt;

namespace {

// Point 0 plays p(alpha) and stays out of the DP; h1: x >= 0, h2: y >= 0.
CandidateInstance two_step() {
  CandidateInstance inst;
  inst.p_alpha = 0;
  inst.hseq = {hp(0, 1, 0, 0), hp(1, 0, 1, 0)};
  inst.hseq_pos = {0, 1};
  inst.pids = {1, 2};
  return inst;
}

}  // namespace

TEST_CASE("empty sequence") {
  CandidateInstance inst;
  inst.pids = {1};
  const std::vector<WeightedPoint> p{pt(0, 0, 0), pt(1, 0, 0)};
  const IndirectSolution s = run_reference(inst, p);
  CHECK(s.value == Cost::of(0));
  CHECK(s.points.empty());
  CHECK(s.trace.iterations() == 0);
}

TEST_CASE("hand trace: one point covers both") {
  // p1 inside h1 and h2, p2 inside h2 only.
  const std::vector<WeightedPoint> p{pt(0, -5, -5, 1), pt(1, 1, 1, 3), pt(2, -1, 1, 4)};
  const IndirectSolution s = run_reference(two_step(), p);
  CHECK(s.trace.delta[1] == Cost::of(3));
  CHECK(s.trace.delta[2] == Cost::of(3));
  CHECK(s.trace.argmin[2] == 1);
  CHECK(s.value == Cost::of(3));
  CHECK(s.points == std::vector<int>{1});
}

TEST_CASE("hand trace: reset chain") {
  // p1 inside h1 only, p2 inside h2 only.
  const std::vector<WeightedPoint> p{pt(0, -5, -5, 1), pt(1, 1, -1, 3), pt(2, -1, 1, 4)};
  const IndirectSolution s = run_reference(two_step(), p);
  CHECK(s.trace.delta[1] == Cost::of(3));
  CHECK(s.trace.argmin[1] == 1);
  CHECK(s.trace.delta[2] == Cost::of(7));
  CHECK(s.trace.argmin[2] == 2);
  CHECK(s.trace.reset_snapshot[2] == 1);
  CHECK(s.value == Cost::of(7));
  CHECK(s.points == std::vector<int>{1, 2});
}

TEST_CASE("abort when a half-plane is hit only by p(alpha)") {
  const std::vector<WeightedPoint> p{pt(0, 5, 5, 1), pt(1, -1, -1, 3)};
  CandidateInstance inst;
  inst.hseq = {hp(0, 1, 0, 0)};
  inst.hseq_pos = {0};
  inst.pids = {1};
  const IndirectSolution s = run_reference(inst, p);
  CHECK(s.value.is_infinite());
  CHECK(s.trace.aborted());
  CHECK(s.points.empty());
}

TEST_CASE("backtrack of a never-reset minimum is a singleton") {
  DpTrace t;
  t.delta.push_back(Cost::of(4));
  t.argmin.push_back(7);
  t.reset_snapshot.push_back(0);
  CHECK(backtrack(t) == std::vector<int>{7});
}

TEST_CASE("indirect solutions hit their sequence and weigh at most W") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto r = test::reduce(test::random_instance(30, seed, seed % 2 ? 8 : 1000));
    bool any_finite = false;
    for (const Arc& a : r.candidates) {
      const CandidateInstance inst = build_instance(a, r.circle, static_cast<int>(r.points.size()));
      const IndirectSolution s = run_reference(inst, r.points);
      if (s.value.is_infinite()) continue;
      any_finite = true;
      Weight sum = 0;
      for (int id : s.points) {
        sum += r.points[id].w;
        CHECK(id != inst.p_alpha);
      }
      CHECK(sum <= s.value.value());
      for (const auto& h : inst.hseq) {
        CHECK(std::any_of(s.points.begin(), s.points.end(), [&](int id) { return hits(r.points[id], h); }));
      }
      // delta never decreases along the sequence.
      for (int i = 1; i < s.trace.iterations(); ++i) CHECK(s.trace.delta[i] <= s.trace.delta[i + 1]);
    }
    CHECK(any_finite);
  }
}
