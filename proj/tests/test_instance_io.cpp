#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "hphs/generate.hpp"
#include "hphs/instance_io.hpp"

using namespace hphs;

namespace {

void parse_fails_at(const std::string& text, int line, int column) {
  try {
    parse_instance_string(text);
    FAIL("expected a parse error for:\n" << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_CASE("parse with comments and blank lines") {
  const Instance inst = parse_instance_string(
      "# three points\n"
      "points 3\n"
      "0 2 0 3\n"
      "\n"
      "1 -2 0 4   # left\n"
      "2 0 0 5\n"
      "halfplanes 2\n"
      "1 -1 0 1\n"
      "0 1 0 1\n");
  REQUIRE(inst.points.size() == 3);
  CHECK(inst.points[1].x == -2);
  CHECK(inst.points[1].w == 4);
  REQUIRE(inst.halfplanes.size() == 2);
  CHECK(inst.halfplanes[0].id == 1);
  CHECK(inst.halfplanes[0].a == -1);
  CHECK(inst.halfplanes[1].c == 1);
}

TEST_CASE("parse errors carry line and column") {
  parse_fails_at("points 1\n0 0 0 0\nhalfplanes 0\n", 2, 7);              // zero weight
  parse_fails_at("points 1\n0 0 0 -3\nhalfplanes 0\n", 2, 7);             // negative weight
  parse_fails_at("points 2\n0 0 0 1\n0 1 1 1\nhalfplanes 0\n", 3, 1);     // duplicate id
  parse_fails_at("points 1\n0 0 0 1\nhalfplanes 1\n0 0 0 5\n", 4, 3);     // zero normal
  parse_fails_at("points 1\n0 1073741825 0 1\nhalfplanes 0\n", 2, 3);     // |x| > 2^30
  parse_fails_at("points 1\n0 0 0 1\nhalfplanes 1\n0 1 0 99999999999999999999\n", 4, 7);
  parse_fails_at("points 1\n0 0 0 1\nhalfplanes 1\n0 1 0\n", 4, 6);       // missing field
  parse_fails_at("points 1\n0 x 0 1\nhalfplanes 0\n", 2, 3);
  parse_fails_at("point 1\n", 1, 1);
  parse_fails_at("points 2\n0 0 0 1\n", 3, 1);                            // truncated
  parse_fails_at("points 1\n5 0 0 1\nhalfplanes 0\n", 2, 1);              // id outside 0..n-1
  parse_fails_at("points 0\nhalfplanes 0\nextra\n", 3, 1);
}

TEST_CASE("format and parse round-trip") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenOptions g;
    g.n = 1 + static_cast<int>(seed % 30);
    g.seed = seed;
    g.coord_range = seed % 2 ? 1000 : kCoordBound;
    g.normal_range = seed % 2 ? 0 : kCoordBound;
    const std::string text = format_instance(generate(g));
    CHECK(format_instance(parse_instance_string(text)) == text);
  }
}

TEST_CASE("generator is seed-deterministic and honours feasibility") {
  GenOptions g;
  g.n = 40;
  g.seed = 9;
  CHECK(format_instance(generate(g)) == format_instance(generate(g)));
  g.seed = 10;
  const std::string other = format_instance(generate(g));
  g.seed = 9;
  CHECK(format_instance(generate(g)) != other);
  CHECK_THROWS_AS(generate(GenOptions{.n = 0}), InvalidInput);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GenOptions f;
    f.n = 30;
    f.seed = seed;
    f.ensure_feasible = true;
    const Instance inst = generate(f);
    for (const auto& h : inst.halfplanes) {
      CHECK(std::any_of(inst.points.begin(), inst.points.end(), [&](const auto& p) { return hits(p, h); }));
    }
  }
}

TEST_CASE("kappa option fixes the shallowest half-plane") {
  GenOptions g;
  g.n = 200;
  g.kappa = 3;
  g.seed = 4;
  g.coord_range = 1'000'000;
  g.ensure_feasible = true;
  const Instance inst = generate(g);
  const auto count = [&](const HalfPlane& h) {
    return std::count_if(inst.points.begin(), inst.points.end(), [&](const auto& p) { return hits(p, h); });
  };
  CHECK(count(inst.halfplanes[0]) == 3);
  for (const auto& h : inst.halfplanes) CHECK(count(h) >= 3);
}

TEST_CASE("solution JSON") {
  Solution s;
  s.total_weight = 7;
  s.point_ids = {0, 1};
  s.kappa = 1;
  s.engine = Engine::Reference;
  const std::string text = solution_json(s, 1.5);
  const auto j = nlohmann::json::parse(text);
  CHECK(j["status"] == "optimal");
  CHECK(j["total_weight"] == 7);
  CHECK(j["kappa"] == 1);
  CHECK(j["engine"] == "reference");
  CHECK(j["millis"] == 1.5);
  CHECK(parse_solution_points(text) == std::vector<int>{0, 1});
  CHECK_THROWS(parse_solution_points("{}"));
}
