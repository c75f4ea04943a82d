#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "glide/ascii_grid.hpp"
#include "glide/errors.hpp"
#include "glide/scenario.hpp"

using namespace glide;
using nlohmann::json;

namespace {

json base_doc() {
  return json::parse(R"({
    "grid": {"n_cols": 5, "n_rows": 4, "spacing": 2.0},
    "elevation": {"constant": 3.0},
    "wind": {"type": "zero"},
    "aircraft": {"mode": "constant", "glide_ratio": 8},
    "problem": {"type": "grrp", "start": [4, 2], "z0": 50}
  })");
}

std::string field_of(const json& doc) {
  try {
    load_scenario(doc);
  } catch (const Error& e) {
    return e.field();
  }
  return "(no error)";
}

}  // namespace

TEST_CASE("flat-uniform-wind preset") {
  const Scenario s = make_preset("flat-uniform-wind");
  CHECK(s.grid.n_cols == 101);
  CHECK(s.grid.n_rows == 101);
  CHECK(s.grid.spacing == 1.0);
  CHECK(s.wind.max_speed() == doctest::Approx(0.6));
  CHECK(s.grrp().z0 == 100.0);
  CHECK(s.options.seed_radius == 2.9);
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("staircase preset terrain") {
  const Scenario s = make_preset("staircase");
  CHECK(s.glide_field().constant_ratio() == 1.0);
  for (int j = 0; j < s.grid.n_rows; j += 7)
    for (int i = 0; i < s.grid.n_cols; ++i) {
      const double x = s.grid.position(i, j).x;
      const double expect = x <= 33 ? 0.0 : (x <= 66 ? 100.0 : 200.0);
      CHECK(s.elevation.values[s.grid.index(i, j)] == expect);
    }
}

TEST_CASE("every preset validates") {
  for (const auto& p : list_presets()) {
    CAPTURE(p.name);
    const Scenario s = make_preset(p.name);
    CHECK_NOTHROW(s.validate());
    CHECK(s.is_grrp() == (p.problem == "grrp"));
  }
  CHECK_THROWS_AS(make_preset("no-such-preset"), Error);
}

TEST_CASE("z0 below the terrain names the field") {
  json d = base_doc();
  d["problem"]["z0"] = 1.0;
  CHECK(field_of(d) == "problem.z0");
}

TEST_CASE("invariant violations name their field") {
  json d = base_doc();
  d["grid"]["spacing"] = -1;
  CHECK(field_of(d) == "grid.spacing");
  d = base_doc();
  d["problem"]["start"] = json::array({100, 0});
  CHECK(field_of(d) == "problem.start");
  d = base_doc();
  d["elevation"] = json::array({1, 2, 3});
  CHECK(field_of(d) == "elevation");
  d = base_doc();
  d["aircraft"] = {{"mode", "fixed-airspeed"}, {"airspeed", 1.0}, {"sink", 0.1}};
  d["wind"] = {{"type", "uniform"}, {"speed", 1.5}, {"bearing_deg", 0}};
  CHECK(field_of(d) == "aircraft.airspeed");
  d = base_doc();
  d["wind"] = {{"type", "layered"}, {"layers", json::array({{{"altitude", 5}, {"vector", {0, 0}}}, {{"altitude", 1}, {"vector", {0, 0}}}})}};
  CHECK(field_of(d) == "wind.layers");
  d = base_doc();
  d["options"] = {{"seed_radius", 1.0}};
  CHECK(field_of(d) == "options.seed_radius");
  d = base_doc();
  d["options"] = {{"bogus", 1}};
  CHECK(field_of(d) == "options.bogus");
  d = base_doc();
  d["extra"] = 1;
  CHECK(field_of(d) == "extra");
  d = base_doc();
  d["problem"] = {{"type", "mrap"}, {"airfield", {0, 0}}};
  d["elevation"] = json::array();
  for (int k = 0; k < 20; ++k) d["elevation"].push_back(k == 0 ? json(nullptr) : json(1.0));
  CHECK(field_of(d) == "problem.airfield");
}

TEST_CASE("constant glide ratio with wind is unsupported") {
  json d = base_doc();
  d["wind"] = {{"type", "uniform"}, {"vector", {0.1, 0}}};
  try {
    load_scenario(d);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsupported_configuration);
  }
}

TEST_CASE("defaults are reported") {
  const json d = json::parse(R"({"grid": {"n_cols": 3, "n_rows": 3}, "problem": {"type": "mrap", "airfield": [1, 1]}})");
  const auto loaded = load_scenario(d);
  const auto& a = loaded.applied_defaults;
  auto has = [&](const std::string& s) { return std::find(a.begin(), a.end(), s) != a.end(); };
  CHECK(has("elevation=flat 0"));
  CHECK(has("wind=zero"));
  CHECK(has("aircraft=constant glide_ratio 1"));
  CHECK(has("options.seed_radius=auto"));
  CHECK(loaded.scenario.options.direction_samples == 720);
  CHECK_FALSE(loaded.scenario.options.seed_radius);
}

TEST_CASE("safety margin is added to the elevation once") {
  json d = base_doc();
  d["options"] = {{"safety_margin", 10.0}};
  const Scenario s = load_scenario(d).scenario;
  CHECK(s.elevation.values.front() == 13.0);
  const Scenario again = load_scenario(scenario_to_json(s)).scenario;
  CHECK(again.elevation.values == s.elevation.values);
}

TEST_CASE("raster elevation resolves relative to the document") {
  const auto dir = std::filesystem::temp_directory_path() / "glide_scenario_raster";
  std::filesystem::create_directories(dir);
  {
    std::ofstream r(dir / "terrain.asc");
    r << "ncols 3\nnrows 2\nxllcorner -0.5\nyllcorner -0.5\ncellsize 1\nNODATA_value -9999\n4 5 -9999\n1 2 3\n";
    std::ofstream doc(dir / "scenario.json");
    doc << R"({"elevation": "terrain.asc", "problem": {"type": "grrp", "start": [0, 0], "z0": 9}})";
  }
  const Scenario s = load_scenario_file(dir / "scenario.json").scenario;
  std::filesystem::remove_all(dir);
  CHECK(s.grid.n_cols == 3);
  CHECK(s.grid.origin == Vec2{0.0, 0.0});
  CHECK(s.elevation.values[0] == 1.0);
  CHECK(std::isinf(s.elevation.values[5]));
}

TEST_CASE("missing file and malformed JSON") {
  try {
    load_scenario_file("/nonexistent/scenario.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
  const auto path = std::filesystem::temp_directory_path() / "glide_bad.json";
  std::ofstream(path) << "{ not json";
  try {
    load_scenario_file(path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::validation);
    CHECK(e.field() == "document");
  }
  std::filesystem::remove(path);
}

TEST_CASE("scenario JSON round trip") {
  for (std::string name : {"flat-uniform-wind", "single-peak", "mountain-range", "staircase", "grrp-infinite-barrier"}) {
    CAPTURE(name);
    const Scenario s = make_preset(name);
    const json j = scenario_to_json(s);
    const Scenario back = load_scenario(j).scenario;
    CHECK(back.grid == s.grid);
    CHECK(back.elevation.values == s.elevation.values);
    CHECK(back.is_grrp() == s.is_grrp());
    CHECK(back.options.seed_radius == s.options.seed_radius);
    CHECK(scenario_to_json(back) == j);
    const Vec2 p = s.grid.position(s.grid.n_cols / 3, s.grid.n_rows / 4);
    CHECK(back.wind.at(p, 40.0) == s.wind.at(p, 40.0));
  }
}

TEST_CASE("preset reference with overrides") {
  const json d = json::parse(R"({"preset": "grrp-windless-flat", "problem": {"type": "grrp", "start": [10, 10], "z0": 30}})");
  const Scenario s = load_scenario(d).scenario;
  CHECK(s.grid.n_cols == 101);
  CHECK(s.grrp().z0 == 30.0);
}
