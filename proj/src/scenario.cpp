#include "glide/scenario.hpp"

#include <cmath>
#include <fstream>

#include "glide/ascii_grid.hpp"
#include "glide/errors.hpp"

namespace glide {

using nlohmann::json;

double Scenario::reference_altitude() const {
  if (is_grrp()) return grrp().z0;
  return elevation.max_finite();
}

GlideField Scenario::glide_field() const { return GlideField(wind, aircraft, grid, reference_altitude()); }

void Scenario::validate() const {
  grid.validate();
  if (elevation.values.size() != grid.node_count())
    throw validation_error("elevation", "expected " + std::to_string(grid.node_count()) + " values, got " +
                                            std::to_string(elevation.values.size()));
  for (double v : elevation.values)
    if (std::isnan(v) || v == -kInfinity) throw validation_error("elevation", "values must be finite or impassable");
  wind.validate();
  if (const auto* g = std::get_if<GriddedWind>(&wind.variant()); g && !(g->grid == grid))
    throw validation_error("wind.vectors", "gridded wind must share the scenario grid");
  aircraft.validate(wind.max_speed());

  if (is_grrp()) {
    const auto& p = grrp();
    if (!std::isfinite(p.start.x) || !std::isfinite(p.start.y) || !grid.contains(p.start))
      throw validation_error("problem.start", "must lie inside the grid");
    if (!std::isfinite(p.z0)) throw validation_error("problem.z0", "must be finite");
    const double e = elevation.values[grid.nearest_node(p.start)];
    if (!(p.z0 >= e))
      throw validation_error("problem.z0", "below the minimum allowed altitude at the start (" + std::to_string(e) + ")");
  } else {
    const auto& p = mrap();
    if (!std::isfinite(p.airfield.x) || !std::isfinite(p.airfield.y) || !grid.contains(p.airfield))
      throw validation_error("problem.airfield", "must lie inside the grid");
    if (!std::isfinite(elevation.values[grid.nearest_node(p.airfield)]))
      throw validation_error("problem.airfield", "airfield elevation is impassable");
  }

  if (options.seed_radius) {
    const double r = *options.seed_radius;
    if (!std::isfinite(r) || r < 0.0) throw validation_error("options.seed_radius", "must be a non-negative length");
    if (r > 0.0 && r < grid.spacing)
      throw validation_error("options.seed_radius", "must be 0 or at least the grid spacing");
  }
  if (options.direction_samples < 8) throw validation_error("options.direction_samples", "must be at least 8");
  if (!std::isfinite(options.safety_margin)) throw validation_error("options.safety_margin", "must be finite");
}

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw validation_error(path, "must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw validation_error(join(path, key), "missing");
  return *it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw validation_error(field, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw validation_error(field, "must be finite");
  return d;
}

double number_at(const json& obj, const std::string& key, const std::string& path) {
  return number(require(obj, key, path), join(path, key));
}

int integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw validation_error(field, "must be an integer");
  return v.get<int>();
}

Vec2 vec2(const json& v, const std::string& field) {
  if (v.is_array() && v.size() == 2) return {number(v[0], field + "[0]"), number(v[1], field + "[1]")};
  if (v.is_object() && v.contains("x") && v.contains("y")) return {number(v["x"], field + ".x"), number(v["y"], field + ".y")};
  throw validation_error(field, "must be [x, y]");
}

std::string text(const json& v, const std::string& field) {
  if (!v.is_string()) throw validation_error(field, "must be a string");
  return v.get<std::string>();
}

GridSpec parse_grid(const json& j) {
  GridSpec g;
  g.n_cols = integer(require(j, "n_cols", "grid"), "grid.n_cols");
  g.n_rows = integer(require(j, "n_rows", "grid"), "grid.n_rows");
  g.spacing = j.contains("spacing") ? number(j["spacing"], "grid.spacing") : 1.0;
  g.origin = j.contains("origin") ? vec2(j["origin"], "grid.origin") : Vec2{};
  g.validate();
  return g;
}

ElevationField parse_values(const json& arr, const std::string& field) {
  if (!arr.is_array()) throw validation_error(field, "must be an array");
  ElevationField e;
  e.values.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    if (arr[k].is_null()) {
      e.values.push_back(kInfinity);
      continue;
    }
    e.values.push_back(number(arr[k], field + "[" + std::to_string(k) + "]"));
  }
  return e;
}

ElevationField terrain_by_name(const std::string& name, const GridSpec& grid, const json& spec) {
  if (name == "flat") return terrain::flat(grid, spec.contains("height") ? number(spec["height"], "elevation.height") : 0.0);
  if (name == "staircase") return terrain::staircase(grid);
  if (name == "single-peak") return terrain::single_peak(grid);
  if (name == "mountain-range") return terrain::mountain_range(grid);
  if (name == "infinite-barrier") return terrain::barrier(grid, kInfinity, true);
  if (name == "finite-barrier")
    return terrain::barrier(grid, number_at(spec, "height", "elevation"), false);
  throw validation_error("elevation.preset", "unknown terrain '" + name + "'");
}

WindModel parse_wind(const json& j, const GridSpec& grid) {
  const std::string type = j.contains("type") ? text(j["type"], "wind.type") : "uniform";
  auto velocity = [](const json& o, const std::string& path) {
    if (o.contains("vector")) return vec2(o["vector"], join(path, "vector"));
    const double speed = number_at(o, "speed", path);
    if (speed < 0.0) throw validation_error(join(path, "speed"), "must be non-negative");
    return wind_from_bearing(speed, number_at(o, "bearing_deg", path));
  };
  if (type == "zero") return ZeroWind{};
  if (type == "uniform") return UniformWind{velocity(j, "wind")};
  if (type == "layered") {
    const json& layers = require(j, "layers", "wind");
    if (!layers.is_array()) throw validation_error("wind.layers", "must be an array");
    LayeredWind w;
    for (std::size_t k = 0; k < layers.size(); ++k) {
      const std::string path = "wind.layers[" + std::to_string(k) + "]";
      w.layers.push_back({number_at(layers[k], "altitude", path), velocity(layers[k], path)});
    }
    return w;
  }
  if (type == "grid") {
    const json& vectors = require(j, "vectors", "wind");
    if (!vectors.is_array()) throw validation_error("wind.vectors", "must be an array");
    GriddedWind w;
    w.grid = grid;
    for (std::size_t k = 0; k < vectors.size(); ++k)
      w.velocity.push_back(vec2(vectors[k], "wind.vectors[" + std::to_string(k) + "]"));
    if (j.contains("scaling")) {
      const json& s = j["scaling"];
      if (!s.is_array()) throw validation_error("wind.scaling", "must be an array");
      for (std::size_t k = 0; k < s.size(); ++k) {
        const std::string path = "wind.scaling[" + std::to_string(k) + "]";
        w.scaling.push_back({number_at(s[k], "altitude", path), number_at(s[k], "scale", path)});
      }
    }
    return w;
  }
  throw validation_error("wind.type", "unknown wind type '" + type + "'");
}

AircraftModel parse_aircraft(const json& j) {
  const std::string mode = text(require(j, "mode", "aircraft"), "aircraft.mode");
  AircraftModel a;
  if (mode == "constant") {
    a.mode = ConstantGlide{number_at(j, "glide_ratio", "aircraft")};
  } else if (mode == "fixed-airspeed") {
    a.mode = FixedAirspeed{number_at(j, "airspeed", "aircraft"), number_at(j, "sink", "aircraft")};
  } else {
    throw validation_error("aircraft.mode", "unknown mode '" + mode + "'");
  }
  return a;
}

std::variant<GrrpProblem, MrapProblem> parse_problem(const json& j) {
  const std::string type = text(require(j, "type", "problem"), "problem.type");
  if (type == "grrp") return GrrpProblem{vec2(require(j, "start", "problem"), "problem.start"), number_at(j, "z0", "problem")};
  if (type == "mrap") return MrapProblem{vec2(require(j, "airfield", "problem"), "problem.airfield")};
  throw validation_error("problem.type", "must be grrp or mrap");
}

void parse_options(const json& j, SolverOptions& o, std::vector<std::string>& defaults) {
  if (!j.is_object()) throw validation_error("options", "must be an object");
  if (j.contains("seed_radius")) {
    const json& r = j["seed_radius"];
    if (r.is_string() && r.get<std::string>() == "auto")
      o.seed_radius.reset();
    else
      o.seed_radius = number(r, "options.seed_radius");
  } else if (!o.seed_radius) {
    defaults.push_back("options.seed_radius=auto");
  }
  if (j.contains("direction_samples")) o.direction_samples = integer(j["direction_samples"], "options.direction_samples");
  if (j.contains("safety_margin")) o.safety_margin = number(j["safety_margin"], "options.safety_margin");
  for (const auto& [key, value] : j.items())
    if (key != "seed_radius" && key != "direction_samples" && key != "safety_margin")
      throw validation_error("options." + key, "unknown option");
}

}  // namespace

LoadedScenario load_scenario(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw validation_error("document", "must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "name" && key != "preset" && key != "grid" && key != "elevation" && key != "wind" && key != "aircraft" &&
        key != "problem" && key != "options")
      throw validation_error(key, "unknown top-level key");

  LoadedScenario out;
  Scenario& s = out.scenario;
  auto& defaults = out.applied_defaults;
  const bool from_preset = doc.contains("preset");
  if (from_preset) s = make_preset(text(doc["preset"], "preset"));
  if (doc.contains("name")) s.name = text(doc["name"], "name");

  bool have_grid = from_preset;
  if (doc.contains("grid")) {
    s.grid = parse_grid(doc["grid"]);
    have_grid = true;
  }

  bool elevation_set = false;
  if (doc.contains("elevation")) {
    const json& e = doc["elevation"];
    std::optional<std::filesystem::path> raster;
    if (e.is_string()) raster = e.get<std::string>();
    else if (e.is_object() && e.contains("raster")) raster = text(e["raster"], "elevation.raster");
    if (raster) {
      std::filesystem::path p = *raster;
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      AsciiGrid g = import_ascii_grid(p);
      if (have_grid && !(g.grid == s.grid) && doc.contains("grid"))
        throw validation_error("elevation.raster", "raster dimensions do not match grid");
      s.grid = g.grid;
      have_grid = true;
      s.elevation = std::move(g.elevation);
    } else {
      if (!have_grid) throw validation_error("grid", "missing");
      if (e.is_array()) s.elevation = parse_values(e, "elevation");
      else if (e.is_object() && e.contains("values")) s.elevation = parse_values(e["values"], "elevation.values");
      else if (e.is_object() && e.contains("preset")) s.elevation = terrain_by_name(text(e["preset"], "elevation.preset"), s.grid, e);
      else if (e.is_object() && e.contains("constant")) s.elevation = terrain::flat(s.grid, number(e["constant"], "elevation.constant"));
      else throw validation_error("elevation", "expected an array, a raster path, or an object with values/raster/preset/constant");
      if (s.elevation.values.size() != s.grid.node_count())
        throw validation_error("elevation", "expected " + std::to_string(s.grid.node_count()) + " values, got " +
                                                std::to_string(s.elevation.values.size()));
    }
    elevation_set = true;
  }
  if (!have_grid) throw validation_error("grid", "missing");
  if (!elevation_set) {
    if (!from_preset || s.elevation.values.size() != s.grid.node_count()) {
      s.elevation = terrain::flat(s.grid);
      defaults.push_back("elevation=flat 0");
    }
  }

  if (doc.contains("wind")) {
    s.wind = parse_wind(doc["wind"], s.grid);
  } else if (!from_preset) {
    s.wind = ZeroWind{};
    defaults.push_back("wind=zero");
  }

  if (doc.contains("aircraft")) {
    s.aircraft = parse_aircraft(doc["aircraft"]);
  } else if (!from_preset) {
    s.aircraft = AircraftModel{ConstantGlide{1.0}, {}};
    defaults.push_back("aircraft=constant glide_ratio 1");
  }

  if (doc.contains("problem")) s.problem = parse_problem(doc["problem"]);
  else if (!from_preset) throw validation_error("problem", "missing");

  if (doc.contains("options")) {
    parse_options(doc["options"], s.options, defaults);
  } else if (!from_preset) {
    defaults.push_back("options.seed_radius=auto");
    defaults.push_back("options.direction_samples=720");
  }
  if (s.options.safety_margin != 0.0 && doc.contains("options") && doc["options"].contains("safety_margin"))
    for (double& v : s.elevation.values) v += s.options.safety_margin;

  if (s.name.empty()) s.name = "scenario";
  s.validate();
  return out;
}

LoadedScenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open scenario " + path.string(), "scenario");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw validation_error("document", std::string("malformed JSON: ") + e.what());
  }
  return load_scenario(doc, path.parent_path());
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

json wind_json(const WindModel& wind) {
  return std::visit(
      [](const auto& w) -> json {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ZeroWind>) {
          return {{"type", "zero"}};
        } else if constexpr (std::is_same_v<T, UniformWind>) {
          return {{"type", "uniform"}, {"vector", vec_json(w.velocity)}};
        } else if constexpr (std::is_same_v<T, LayeredWind>) {
          json layers = json::array();
          for (const auto& l : w.layers) layers.push_back({{"altitude", l.altitude}, {"vector", vec_json(l.velocity)}});
          return {{"type", "layered"}, {"layers", layers}};
        } else {
          json vectors = json::array();
          for (Vec2 v : w.velocity) vectors.push_back(vec_json(v));
          json out = {{"type", "grid"}, {"vectors", vectors}};
          if (!w.scaling.empty()) {
            json scaling = json::array();
            for (const auto& sl : w.scaling) scaling.push_back({{"altitude", sl.altitude}, {"scale", sl.scale}});
            out["scaling"] = scaling;
          }
          return out;
        }
      },
      wind.variant());
}

}  // namespace

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  doc["grid"] = {{"n_cols", s.grid.n_cols},
                 {"n_rows", s.grid.n_rows},
                 {"spacing", s.grid.spacing},
                 {"origin", vec_json(s.grid.origin)}};
  json values = json::array();
  for (double v : s.elevation.values) values.push_back(number_or_null(v));
  doc["elevation"] = {{"values", values}};
  doc["wind"] = wind_json(s.wind);
  if (const auto* c = std::get_if<ConstantGlide>(&s.aircraft.mode))
    doc["aircraft"] = {{"mode", "constant"}, {"glide_ratio", c->ratio}};
  else {
    const auto& f = std::get<FixedAirspeed>(s.aircraft.mode);
    doc["aircraft"] = {{"mode", "fixed-airspeed"}, {"airspeed", f.airspeed}, {"sink", f.sink}};
  }
  if (s.is_grrp())
    doc["problem"] = {{"type", "grrp"}, {"start", vec_json(s.grrp().start)}, {"z0", s.grrp().z0}};
  else
    doc["problem"] = {{"type", "mrap"}, {"airfield", vec_json(s.mrap().airfield)}};
  json options;
  options["seed_radius"] = s.options.seed_radius ? json(*s.options.seed_radius) : json("auto");
  options["direction_samples"] = s.options.direction_samples;
  doc["options"] = options;
  return doc;
}

}  // namespace glide
