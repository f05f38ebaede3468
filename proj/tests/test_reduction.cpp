#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hphs/reduction.hpp"
#include "support.hpp"

using namespace hphs;
using hphs::test::hp;
using hphs::test::pt;

namespace {

HitRow row_of(std::initializer_list<int> bits) {
  HitRow r;
  r.length = static_cast<int>(bits.size());
  r.words.assign((bits.size() + 63) / 64, 0);
  int i = 0;
  for (int b : bits) {
    if (b) r.set(i);
    ++i;
  }
  return r;
}

std::vector<int> bits_of(const HitRow& r) {
  std::vector<int> out;
  for (int i = 0; i < r.length; ++i) out.push_back(r.test(i));
  return out;
}

}  // namespace

TEST_CASE("circle order of the unit square") {
  const auto sq = test::unit_square();
  const std::vector<HalfPlane> shuffled{sq[2], sq[0], sq[3], sq[1]};
  const CirclePoints c = build_circle_points(shuffled);
  REQUIRE(c.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(c.order[i].id == i);
    CHECK(c.pos_of[i] == i);
  }
  CHECK(build_circle_points(std::vector<HalfPlane>{hp(0, 1, 1, 0)}).size() == 1);
}

TEST_CASE("circle order matches sorting by angle") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = test::random_instance(40, seed, 1000);
    const auto kept = dedup_halfplanes(inst.halfplanes).kept;
    const CirclePoints c = build_circle_points(kept);
    std::vector<std::pair<long double, int>> by_angle;
    for (const auto& h : kept) {
      long double t = std::atan2(static_cast<long double>(h.b), static_cast<long double>(h.a));
      if (t < 0) t += 2 * std::numbers::pi_v<long double>;
      by_angle.push_back({t, h.id});
    }
    std::sort(by_angle.begin(), by_angle.end());
    REQUIRE(c.size() == static_cast<int>(by_angle.size()));
    for (int i = 0; i < c.size(); ++i) CHECK(c.order[i].id == by_angle[i].second);
  }
}

TEST_CASE("hit rows against the unit square") {
  const CirclePoints c = build_circle_points(test::unit_square());
  const std::vector<WeightedPoint> p{pt(0, 0, 0), pt(1, 2, 0), pt(2, 5, 5)};
  const auto rows = hit_rows(p, c);
  CHECK(bits_of(rows[0]) == std::vector<int>{1, 1, 1, 1});
  CHECK(bits_of(rows[1]) == std::vector<int>{1, 1, 0, 1});
  // (5,5) misses -x >= -1 and -y >= -1 but hits the others.
  CHECK(bits_of(rows[2]) == std::vector<int>{1, 1, 0, 0});
  CHECK(rows[1].count() == 3);
  const std::vector<HalfPlane> far{hp(0, 1, 0, 10), hp(1, 0, 1, 10)};
  CHECK(hit_rows(std::vector<WeightedPoint>{pt(0, 0, 0)}, build_circle_points(far))[0].count() == 0);
}

TEST_CASE("arcs_of") {
  SUBCASE("all ones") {
    const auto arcs = arcs_of(row_of({1, 1, 1, 1}), 5);
    REQUIRE(arcs.size() == 1);
    CHECK(arcs[0].full());
    CHECK(arcs[0].length() == 4);
    CHECK(arcs[0].weight == 5);
  }
  SUBCASE("wrapping run") {
    const auto arcs = arcs_of(row_of({1, 1, 0, 1}), 1);
    REQUIRE(arcs.size() == 1);
    CHECK(arcs[0].start == 3);
    CHECK(arcs[0].end == 1);
    CHECK(arcs[0].length() == 3);
    CHECK(!arcs[0].covers(2));
  }
  SUBCASE("isolated runs") {
    const auto arcs = arcs_of(row_of({1, 0, 1, 0}), 1);
    REQUIRE(arcs.size() == 2);
    CHECK(arcs[0].start == 0);
    CHECK(arcs[0].end == 0);
    CHECK(arcs[1].start == 2);
    CHECK(arcs[1].end == 2);
  }
  SUBCASE("no ones") { CHECK(arcs_of(row_of({0, 0, 0}), 1).empty()); }
}

TEST_CASE("arcs partition each row's ones into maximal runs") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 3000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 150);
    HitRow r;
    r.length = n;
    r.words.assign(static_cast<std::size_t>((n + 63) / 64), 0);
    const unsigned density = static_cast<unsigned>(rng() % 5);
    for (int i = 0; i < n; ++i) {
      if (rng() % 5 < density || density == 4) r.set(i);
    }
    std::vector<int> covered(static_cast<std::size_t>(n), 0);
    for (const Arc& a : arcs_of(r, 1)) {
      for (int i = 0; i < n; ++i) covered[i] += a.covers(i);
      if (!a.full()) {
        CHECK(!r.test((a.start + n - 1) % n));
        CHECK(!r.test((a.end + 1) % n));
      }
    }
    for (int i = 0; i < n; ++i) CHECK(covered[i] == static_cast<int>(r.test(i)));
  }
}

TEST_CASE("b* and candidates") {
  SUBCASE("single point in the square") {
    const CirclePoints c = build_circle_points(test::unit_square());
    const std::vector<WeightedPoint> p{pt(0, 0, 0)};
    const auto rows = hit_rows(p, c);
    const BStar b = select_bstar(rows, c.size());
    CHECK(b.kappa == 1);
    const auto cand = candidate_arcs(rows, p, b.index);
    REQUIRE(cand.size() == 1);
    CHECK(cand[0].full());
  }
  SUBCASE("weight-seven instance") {
    const auto r = test::reduce(test::weight_seven());
    CHECK(r.bstar.kappa == 1);
    CHECK(r.candidates.size() == 1);
  }
}

TEST_CASE("kappa is the least coverage of any circle point") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = test::random_instance(30, seed, seed % 3 ? 1000 : 4);
    const auto r = test::reduce(inst);
    int kappa = 1 << 30;
    for (const auto& h : r.circle.order) {
      kappa = std::min<int>(kappa, static_cast<int>(std::count_if(r.points.begin(), r.points.end(),
                                                                  [&](const auto& p) { return hits(p, h); })));
    }
    CHECK(r.bstar.kappa == kappa);
    CHECK(static_cast<int>(r.candidates.size()) == kappa);
    for (const Arc& a : r.candidates) CHECK(a.covers(r.bstar.index));
  }
}

TEST_CASE("build_instance") {
  SUBCASE("full arc leaves nothing") {
    const CirclePoints c = build_circle_points(test::unit_square());
    Arc full{0, 0, 3, 4, 1};
    const CandidateInstance inst = build_instance(full, c, 3);
    CHECK(inst.hseq.empty());
    CHECK(inst.pids == std::vector<int>{1, 2});
  }
  SUBCASE("arc of (2,0) in the square") {
    const CirclePoints c = build_circle_points(test::unit_square());
    const std::vector<WeightedPoint> p{pt(0, 2, 0)};
    const auto arcs = arcs_of(hit_rows(p, c)[0], 1);
    REQUIRE(arcs.size() == 1);
    const CandidateInstance inst = build_instance(arcs[0], c, 1);
    REQUIRE(inst.hseq.size() == 1);
    CHECK(inst.hseq[0].id == 2);
    CHECK(inst.pids.empty());
  }
}

TEST_CASE("candidate instances partition the circle") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = test::reduce(test::random_instance(25, seed, 50));
    for (const Arc& a : r.candidates) {
      const CandidateInstance inst = build_instance(a, r.circle, static_cast<int>(r.points.size()));
      std::vector<int> seen(static_cast<std::size_t>(r.circle.size()), 0);
      for (int i = 0; i < r.circle.size(); ++i) seen[i] += a.covers(i);
      for (std::size_t k = 0; k < inst.hseq.size(); ++k) {
        CHECK(!a.covers(inst.hseq_pos[k]));
        CHECK(r.circle.order[inst.hseq_pos[k]].id == inst.hseq[k].id);
        seen[inst.hseq_pos[k]] += 1;
      }
      // hseq runs counterclockwise from just after the arc's end.
      for (std::size_t k = 0; k < inst.hseq.size(); ++k) {
        CHECK(inst.hseq_pos[k] == (a.end + 1 + static_cast<int>(k)) % r.circle.size());
      }
      for (int s : seen) CHECK(s == 1);
      CHECK(inst.pids.size() + 1 == r.points.size());
      CHECK(std::find(inst.pids.begin(), inst.pids.end(), a.point_id) == inst.pids.end());
    }
  }
}

TEST_CASE("every hitting set induces an arc cover of the same weight") {
  // A point's arcs cover exactly the circle points whose half-planes it hits,
  // so the arcs of a hitting set cover the whole circle and vice versa.
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto r = test::reduce(test::random_instance(10, seed, 6));
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 20; ++t) {
      std::vector<int> chosen;
      for (const auto& p : r.points) {
        if (rng() % 3 == 0) chosen.push_back(p.id);
      }
      bool hitting = true;
      for (const auto& h : r.circle.order) {
        hitting = hitting && std::any_of(chosen.begin(), chosen.end(), [&](int id) { return hits(r.points[id], h); });
      }
      bool covering = true;
      for (int i = 0; i < r.circle.size(); ++i) {
        bool c = false;
        for (int id : chosen) {
          for (const Arc& a : arcs_of(r.rows[id], r.points[id].w)) c = c || a.covers(i);
        }
        covering = covering && c;
      }
      CHECK(hitting == covering);
    }
  }
}
