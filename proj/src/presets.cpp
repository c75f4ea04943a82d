#include <cmath>
#include <functional>

#include "glide/errors.hpp"
#include "glide/scenario.hpp"

namespace glide {
namespace terrain {

ElevationField flat(const GridSpec& grid, double value) { return {std::vector<double>(grid.node_count(), value)}; }

ElevationField barrier(const GridSpec& grid, double height, bool with_openings) {
  ElevationField e = flat(grid);
  const double tol = 1e-9 * grid.spacing;
  for (NodeIndex n = 0; n < e.values.size(); ++n) {
    const Vec2 p = grid.position(n);
    if (std::abs(p.x - barrier_x) >= 0.5 * grid.spacing - tol) continue;
    bool open = false;
    if (with_openings)
      for (const auto& [lo, hi] : barrier_openings) open = open || (p.y >= lo - tol && p.y <= hi + tol);
    if (!open) e.values[n] = height;
  }
  return e;
}

ElevationField staircase(const GridSpec& grid) {
  ElevationField e = flat(grid);
  for (NodeIndex n = 0; n < e.values.size(); ++n) {
    const double x = grid.position(n).x;
    e.values[n] = x <= 33.0 ? 0.0 : x <= 66.0 ? 100.0 : 200.0;
  }
  return e;
}

ElevationField single_peak(const GridSpec& grid) {
  ElevationField e = flat(grid);
  for (NodeIndex n = 0; n < e.values.size(); ++n) {
    const Vec2 d = grid.position(n) - Vec2{55.0, 55.0};
    e.values[n] = 90.0 * std::exp(-dot(d, d) / (2.0 * 10.0 * 10.0));
  }
  return e;
}

ElevationField mountain_range(const GridSpec& grid) {
  ElevationField e = flat(grid);
  auto bump = [](double t, double c, double w) { return std::exp(-(t - c) * (t - c) / (2.0 * w * w)); };
  for (NodeIndex n = 0; n < e.values.size(); ++n) {
    const Vec2 p = grid.position(n);
    const double crest = 150.0 - 110.0 * (bump(p.x, 25.0, 5.0) + bump(p.x, 75.0, 5.0));
    e.values[n] = crest * bump(p.y, 60.0, 4.0);
  }
  return e;
}

}  // namespace terrain

namespace {

GridSpec square(int n, double spacing, Vec2 origin = {}) { return {n, n, spacing, origin}; }

AircraftModel airspeed_one() { return {FixedAirspeed{1.0, 1.0}, {}}; }
AircraftModel glide_one() { return {ConstantGlide{1.0}, {}}; }

Scenario grrp(std::string name, GridSpec grid, ElevationField e, WindModel w, AircraftModel a, Vec2 start, double z0,
              std::optional<double> seed) {
  Scenario s;
  s.name = std::move(name);
  s.grid = grid;
  s.elevation = std::move(e);
  s.wind = std::move(w);
  s.aircraft = std::move(a);
  s.problem = GrrpProblem{start, z0};
  s.options.seed_radius = seed;
  return s;
}

Scenario mrap(std::string name, GridSpec grid, ElevationField e, Vec2 airfield, std::optional<double> seed) {
  Scenario s;
  s.name = std::move(name);
  s.grid = grid;
  s.elevation = std::move(e);
  s.aircraft = glide_one();
  s.problem = MrapProblem{airfield};
  s.options.seed_radius = seed;
  return s;
}

WindModel swirl_wind(const GridSpec& grid) {
  GriddedWind w;
  w.grid = grid;
  w.velocity.resize(grid.node_count());
  for (NodeIndex n = 0; n < w.velocity.size(); ++n) {
    const Vec2 p = grid.position(n);
    w.velocity[n] = wind_from_bearing(1.0, 200.0 + 0.5 * p.x + 0.3 * p.y);
  }
  w.scaling = {{0.0, 0.48}, {100.0, 0.54}};
  return w;
}

WindModel shear_wind(const GridSpec& grid) {
  GriddedWind w;
  w.grid = grid;
  w.velocity.resize(grid.node_count());
  for (NodeIndex n = 0; n < w.velocity.size(); ++n) w.velocity[n] = {0.0, (50.0 - grid.position(n).x) / 100.0};
  return w;
}

ElevationField obstacle_wall(const GridSpec& g) {
  ElevationField e = terrain::flat(g);
  for (int j = 0; j < g.n_rows; ++j)
    if (j < 10 || j > 12) e.values[g.index(25, j)] = kInfinity;
  return e;
}

ElevationField obstacle_blocks(const GridSpec& g) {
  ElevationField e = terrain::flat(g);
  for (int j = 0; j < g.n_rows; ++j)
    for (int i = 0; i < g.n_cols; ++i) {
      if (i >= 15 && i <= 20 && j >= 8 && j <= 35) e.values[g.index(i, j)] = kInfinity;
      if (i >= 30 && i <= 36 && j >= 20 && j <= 50) e.values[g.index(i, j)] = kInfinity;
      if (i >= 22 && i <= 28 && j >= 40 && j <= 46) e.values[g.index(i, j)] = 25.0;
    }
  return e;
}

ElevationField obstacle_hill(const GridSpec& g) {
  ElevationField e = terrain::flat(g);
  for (NodeIndex n = 0; n < e.values.size(); ++n) {
    const Vec2 d = g.position(n) - Vec2{28.0, 28.0};
    e.values[n] = 60.0 * std::exp(-dot(d, d) / (2.0 * 6.0 * 6.0));
  }
  return e;
}

struct Entry {
  PresetInfo info;
  std::function<Scenario()> build;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> v;
    auto add = [&](std::string name, std::string desc, std::string problem, std::function<Scenario()> f) {
      v.push_back({{std::move(name), std::move(desc), std::move(problem)}, std::move(f)});
    };
    const GridSpec g1 = square(101, 1.0);
    const GridSpec g4 = square(404, 0.25);
    const GridSpec g51 = square(51, 1.0);

    add("flat-uniform-wind", "flat terrain, uniform wind 0.6 toward 240 deg, airspeed 1, sink 1, z0 100", "grrp", [=] {
      return grrp("flat-uniform-wind", g1, terrain::flat(g1), UniformWind{wind_from_bearing(0.6, 240.0)}, airspeed_one(),
                  {50, 50}, 100.0, 2.9);
    });
    add("grrp-flat-uniform-wind", "flat terrain, uniform wind 0.6 toward 225 deg, airspeed 1, sink 1, z0 100", "grrp", [=] {
      return grrp("grrp-flat-uniform-wind", g1, terrain::flat(g1), UniformWind{wind_from_bearing(0.6, 225.0)},
                  airspeed_one(), {50, 50}, 100.0, 2.9);
    });
    add("grrp-infinite-barrier", "impassable wall at x=50 with two openings, wind 0.4 north, z0 120", "grrp", [=] {
      return grrp("grrp-infinite-barrier", g1, terrain::barrier(g1, kInfinity, true), UniformWind{{0.0, 0.4}},
                  airspeed_one(), {25, 50}, 120.0, 2.9);
    });
    add("grrp-infinite-barrier-fine", "grrp-infinite-barrier on a 404x404 grid, spacing 0.25", "grrp", [=] {
      return grrp("grrp-infinite-barrier-fine", g4, terrain::barrier(g4, kInfinity, true), UniformWind{{0.0, 0.4}},
                  airspeed_one(), {25, 50}, 120.0, 2.9);
    });
    add("grrp-finite-barrier", "wall of height 45 at x=50, wind 0.3 north, z0 120", "grrp", [=] {
      return grrp("grrp-finite-barrier", g1, terrain::barrier(g1, 45.0, false), UniformWind{{0.0, 0.3}}, airspeed_one(),
                  {20, 70}, 120.0, 2.9);
    });
    add("mrap-flat", "flat terrain, glide ratio 1, airfield at the center", "mrap",
        [=] { return mrap("mrap-flat", g1, terrain::flat(g1), {50, 50}, 4.0); });
    add("mrap-infinite-barrier", "impassable wall at x=50 with two openings, glide ratio 1", "mrap",
        [=] { return mrap("mrap-infinite-barrier", g1, terrain::barrier(g1, kInfinity, true), {25, 50}, 4.0); });
    add("mrap-infinite-barrier-fine", "mrap-infinite-barrier on a 404x404 grid, spacing 0.25", "mrap",
        [=] { return mrap("mrap-infinite-barrier-fine", g4, terrain::barrier(g4, kInfinity, true), {25, 50}, 4.0); });
    add("mrap-finite-barrier", "wall of height 60 at x=50, glide ratio 1", "mrap",
        [=] { return mrap("mrap-finite-barrier", g1, terrain::barrier(g1, 60.0, false), {25, 50}, 4.0); });
    add("single-peak", "gaussian peak, swirling wind growing with altitude, z0 100", "grrp", [=] {
      return grrp("single-peak", g1, terrain::single_peak(g1), swirl_wind(g1), airspeed_one(), {20, 20}, 100.0,
                  std::nullopt);
    });
    add("mrap-single-peak", "gaussian peak, glide ratio 1, airfield at (20, 20)", "mrap",
        [=] { return mrap("mrap-single-peak", g1, terrain::single_peak(g1), {20, 20}, std::nullopt); });
    add("mountain-range", "ridge with two saddles, cross-wind varying with x, z0 110", "grrp", [=] {
      return grrp("mountain-range", g1, terrain::mountain_range(g1), shear_wind(g1), airspeed_one(), {50, 15}, 110.0,
                  std::nullopt);
    });
    add("mrap-mountain-range", "ridge with two saddles, glide ratio 1, airfield at (50, 15)", "mrap",
        [=] { return mrap("mrap-mountain-range", g1, terrain::mountain_range(g1), {50, 15}, std::nullopt); });
    add("staircase", "two terrain steps at x=33 and x=66, glide ratio 1, airfield at the origin", "mrap", [=] {
      const GridSpec g = square(101, 1.0, {0.0, -50.0});
      return mrap("staircase", g, terrain::staircase(g), {0, 0}, 4.0);
    });
    add("grrp-staircase", "staircase terrain, glide ratio 1, start (80, 8) at z0 215", "grrp", [=] {
      const GridSpec g = square(101, 1.0, {0.0, -50.0});
      return grrp("grrp-staircase", g, terrain::staircase(g), ZeroWind{}, glide_one(), {80, 8}, 215.0, std::nullopt);
    });
    add("grrp-windless-flat", "flat terrain, no wind, glide ratio 1, z0 100", "grrp", [=] {
      return grrp("grrp-windless-flat", g1, terrain::flat(g1), ZeroWind{}, glide_one(), {50, 50}, 100.0, std::nullopt);
    });
    add("grrp-windless-barrier", "impassable wall with two openings, no wind, z0 120", "grrp", [=] {
      return grrp("grrp-windless-barrier", g1, terrain::barrier(g1, kInfinity, true), ZeroWind{}, glide_one(), {25, 50},
                  120.0, std::nullopt);
    });
    add("grrp-windless-finite-barrier", "wall of height 45, no wind, z0 120", "grrp", [=] {
      return grrp("grrp-windless-finite-barrier", g1, terrain::barrier(g1, 45.0, false), ZeroWind{}, glide_one(),
                  {20, 70}, 120.0, std::nullopt);
    });
    add("grrp-windless-peak", "gaussian peak, no wind, z0 100", "grrp", [=] {
      return grrp("grrp-windless-peak", g1, terrain::single_peak(g1), ZeroWind{}, glide_one(), {20, 20}, 100.0,
                  std::nullopt);
    });
    add("obstacle-51-wall", "51x51, impassable wall with one opening, no wind, z0 80", "grrp", [=] {
      return grrp("obstacle-51-wall", g51, obstacle_wall(g51), ZeroWind{}, glide_one(), {10, 30}, 80.0, std::nullopt);
    });
    add("obstacle-51-blocks", "51x51, two impassable blocks and a low block, no wind, z0 60", "grrp", [=] {
      return grrp("obstacle-51-blocks", g51, obstacle_blocks(g51), ZeroWind{}, glide_one(), {5, 25}, 60.0, std::nullopt);
    });
    add("obstacle-51-hill", "51x51, gaussian hill above the start altitude, no wind, z0 50", "grrp", [=] {
      return grrp("obstacle-51-hill", g51, obstacle_hill(g51), ZeroWind{}, glide_one(), {10, 10}, 50.0, std::nullopt);
    });
    return v;
  }();
  return entries;
}

}  // namespace

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out;
  for (const auto& e : registry()) out.push_back(e.info);
  return out;
}

bool has_preset(const std::string& name) {
  for (const auto& e : registry())
    if (e.info.name == name) return true;
  return false;
}

Scenario make_preset(const std::string& name) {
  for (const auto& e : registry())
    if (e.info.name == name) return e.build();
  throw validation_error("preset", "unknown preset '" + name + "'");
}

}  // namespace glide
