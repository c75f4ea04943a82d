#include <doctest.h>

#include <cmath>

#include "glide/errors.hpp"
#include "glide/mrap.hpp"
#include "glide/scenario.hpp"

using namespace glide;

namespace {

Scenario mrap_scenario(GridSpec grid, std::vector<double> elevation, Vec2 airfield, double g = 1.0,
                       std::optional<double> seed = 0.0) {
  Scenario s;
  s.name = "test";
  s.grid = grid;
  s.elevation.values = std::move(elevation);
  s.aircraft = AircraftModel{ConstantGlide{g}, {}};
  s.problem = MrapProblem{airfield};
  s.options.seed_radius = seed;
  return s;
}

}  // namespace

TEST_CASE("3x3 hand execution") {
  const auto r = solve_mrap(mrap_scenario({3, 3, 1.0, {}}, std::vector<double>(9, 0.0), {1, 1}));
  const double edge = 1.0, corner = 1.0 + std::sqrt(2.0) / 2.0;
  const std::vector<double> expect{corner, edge, corner, edge, 0.0, edge, corner, edge, corner};
  for (int k = 0; k < 9; ++k) CHECK(r.V[k] == doctest::Approx(expect[k]).epsilon(1e-12));
  CHECK(r.airfield_node == 4);
  CHECK(r.acceptance_order.size() == 9);
}

TEST_CASE("line with a bump clamps to the terrain") {
  // Two identical rows stand in for the single row: the row 0 result is the same.
  const std::vector<double> row{0, 0, 5, 0};
  std::vector<double> e = row;
  e.insert(e.end(), row.begin(), row.end());
  const auto r = solve_mrap(mrap_scenario({4, 2, 1.0, {}}, e, {0, 0}));
  CHECK(r.V[0] == 0.0);
  CHECK(r.V[1] == doctest::Approx(1.0));
  CHECK(r.V[2] == doctest::Approx(5.0));
  CHECK(r.V[3] == doctest::Approx(6.0));
}

TEST_CASE("flat terrain is exact along the axes") {
  for (double g : {1.0, 20.0}) {
    const GridSpec grid{41, 41, 0.5, {-10, -10}};
    const auto r = solve_mrap(mrap_scenario(grid, std::vector<double>(grid.node_count(), 3.0), {0, 0}, g));
    for (int k = 0; k <= 20; ++k) {
      const double d = k * 0.5;
      CHECK(r.V[grid.index(20 + k, 20)] == doctest::Approx(3.0 + d / g).epsilon(1e-12));
      CHECK(r.V[grid.index(20, 20 - k)] == doctest::Approx(3.0 + d / g).epsilon(1e-12));
    }
  }
}

TEST_CASE("flat oracle") {
  CHECK(mrap_oracle_flat({0, 0}, 1.0, {3, 4}) == 5.0);
  CHECK(mrap_oracle_flat({0, 0}, 20.0, {60, 80}) == 5.0);
  CHECK(mrap_oracle_flat({7, 7}, 3.0, {7, 7}, 12.0) == 12.0);
}

TEST_CASE("staircase oracle branches") {
  CHECK(mrap_oracle_staircase({30, 0}) == doctest::Approx(30.0));
  for (double y2 : {-10.0, 0.0, 12.0}) {
    CHECK(mrap_oracle_staircase({50, y2}) == doctest::Approx(117.0));
    CHECK(mrap_oracle_staircase({70, y2}) == doctest::Approx(204.0));
  }
  CHECK_THROWS_AS(mrap_oracle_staircase({500, 0}), Error);
}

TEST_CASE("terrain dominance, cone bound and monotone acceptance on every mrap preset") {
  for (const auto& p : list_presets()) {
    if (p.problem != "mrap" || p.name.find("fine") != std::string::npos) continue;
    CAPTURE(p.name);
    const Scenario s = make_preset(p.name);
    const auto r = solve_mrap(s);
    const double g = *s.glide_field().constant_ratio();
    const Vec2 xa = s.grid.position(r.airfield_node);
    const double Ea = s.elevation.values[r.airfield_node];
    CHECK(r.V[r.airfield_node] == Ea);
    std::size_t dominance = 0, cone = 0;
    for (NodeIndex k = 0; k < r.V.size(); ++k) {
      if (!std::isfinite(r.V[k])) continue;
      if (r.V[k] < s.elevation.values[k]) ++dominance;
      if (r.V[k] < Ea + distance(s.grid.position(k), xa) / g - 1e-9) ++cone;
    }
    CHECK(dominance == 0);
    CHECK(cone == 0);
    for (std::size_t k = 1; k < r.acceptance_order.size(); ++k)
      REQUIRE(r.V[r.acceptance_order[k]] >= r.V[r.acceptance_order[k - 1]]);
  }
}

TEST_CASE("impassable nodes stay infinite and walls are respected") {
  const Scenario s = make_preset("mrap-infinite-barrier");
  const auto r = solve_mrap(s);
  for (NodeIndex k = 0; k < r.V.size(); ++k)
    if (std::isinf(s.elevation.values[k])) CHECK(std::isinf(r.V[k]));
  // Behind the wall the return path must go through an opening.
  const NodeIndex behind = s.grid.nearest_node({75, 50});
  CHECK(r.V[behind] > mrap_oracle_flat({25, 50}, 1.0, {75, 50}) + 10.0);
}

TEST_CASE("mrap rejects wind") {
  Scenario s = make_preset("mrap-flat");
  s.wind = UniformWind{{0.1, 0.0}};
  s.aircraft = AircraftModel{FixedAirspeed{1.0, 0.1}, {}};
  try {
    solve_mrap(s);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsupported_configuration);
  }
  CHECK_THROWS_AS(solve_mrap(make_preset("grrp-windless-flat")), Error);
}

TEST_CASE("mrap is deterministic") {
  const Scenario s = make_preset("mrap-mountain-range");
  const auto a = solve_mrap(s);
  const auto b = solve_mrap(s);
  CHECK(a.V == b.V);
  CHECK(a.acceptance_order == b.acceptance_order);
}

TEST_CASE("airfield snapping is reported") {
  const auto r = solve_mrap(mrap_scenario({5, 5, 1.0, {}}, std::vector<double>(25, 0.0), {1.2, 2.9}));
  CHECK(r.airfield_node == GridSpec{5, 5, 1.0, {}}.index(1, 3));
  CHECK(r.meta.snap_distance == doctest::Approx(std::hypot(0.2, 0.1)));
}
