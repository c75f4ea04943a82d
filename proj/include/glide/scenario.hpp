#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "glide/glide_field.hpp"
#include "glide/grid.hpp"
#include "glide/wind.hpp"

namespace glide {

/// Gliding reachable region: start position and altitude.
struct GrrpProblem {
  Vec2 start;
  double z0 = 0.0;
};

/// Minimal return altitude toward an airfield.
struct MrapProblem {
  Vec2 airfield;
};

struct SolverOptions {
  /// Radius of the analytic seed disk. Empty means "auto".
  std::optional<double> seed_radius;
  int direction_samples = 720;
  /// Already folded into the elevation field at load time.
  double safety_margin = 0.0;
};

struct Scenario {
  std::string name;
  GridSpec grid;
  ElevationField elevation;
  WindModel wind;
  AircraftModel aircraft;
  std::variant<GrrpProblem, MrapProblem> problem;
  SolverOptions options;

  bool is_grrp() const { return std::holds_alternative<GrrpProblem>(problem); }
  const GrrpProblem& grrp() const { return std::get<GrrpProblem>(problem); }
  const MrapProblem& mrap() const { return std::get<MrapProblem>(problem); }

  /// Reference altitude used for glide-field bounds (z0 or the terrain top).
  double reference_altitude() const;
  GlideField glide_field() const;

  /// Checks every invariant; throws a validation error naming the field.
  void validate() const;
};

struct LoadedScenario {
  Scenario scenario;
  std::vector<std::string> applied_defaults;
};

/// Builds a validated scenario from a JSON document. Relative raster paths
/// resolve against `base_dir`.
LoadedScenario load_scenario(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
LoadedScenario load_scenario_file(const std::filesystem::path& path);

/// Explicit document for `scenario` that load_scenario() reads back to the
/// same scenario. The safety margin is already part of the elevation.
nlohmann::json scenario_to_json(const Scenario& scenario);

// Built-in named scenarios (benchmark presets and the worked examples).
struct PresetInfo {
  std::string name;
  std::string description;
  std::string problem;  ///< "grrp" or "mrap"
};

std::vector<PresetInfo> list_presets();
bool has_preset(const std::string& name);
/// Throws a validation error for unknown names.
Scenario make_preset(const std::string& name);

/// Terrain generators used by the presets, exposed for tests and oracles.
namespace terrain {
inline constexpr double barrier_x = 50.0;
/// Passable openings of the barrier presets, as closed ordinate intervals.
inline constexpr std::pair<double, double> barrier_openings[2] = {{20.0, 22.0}, {78.0, 80.0}};

ElevationField flat(const GridSpec& grid, double value = 0.0);
/// One-node-thick column at x = 50 with the two openings above;
/// height +inf for the infinite barrier.
ElevationField barrier(const GridSpec& grid, double height, bool with_openings);
ElevationField staircase(const GridSpec& grid);
ElevationField single_peak(const GridSpec& grid);
ElevationField mountain_range(const GridSpec& grid);
}  // namespace terrain

}  // namespace glide
