#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "glide/contours.hpp"
#include "glide/result.hpp"
#include "glide/scenario.hpp"
#include "glide/trajectory.hpp"

namespace glide {

inline constexpr int kSchemaVersion = 1;

struct DocumentMeta {
  std::string problem;  ///< "grrp" or "mrap"
  std::string variant;
  double runtime_s = 0.0;
  double seed_radius = 0.0;
  double anisotropy = 1.0;
  std::size_t accepted_count = 0;
  double snap_distance = 0.0;
  /// Set by the HTTP service so later trace requests can refer to the solve.
  std::string result_id;
};

/// Solve output as exchanged by the CLI and the HTTP service. `field` holds
/// U (altitude loss) for GRRP and V (return altitude) for MRAP.
struct ResultDocument {
  int schema_version = kSchemaVersion;
  nlohmann::json scenario;
  GridSpec grid;
  std::vector<double> field;
  std::vector<std::uint8_t> reachable_mask;
  std::vector<ContourLevel> contours;
  std::vector<Trajectory> trajectories;
  DocumentMeta meta;
};

nlohmann::json to_json(const ResultDocument& doc);
nlohmann::json to_json(const Trajectory& trajectory);
/// Throws a validation error naming the first malformed field.
ResultDocument document_from_json(const nlohmann::json& j);

std::string serialize_document(const ResultDocument& doc);
ResultDocument parse_document(std::string_view text);
void write_document(const std::filesystem::path& path, const ResultDocument& doc);

ResultDocument make_document(const Scenario& scenario, const GrrpResult& result);
ResultDocument make_document(const Scenario& scenario, const MrapResult& result);

/// Solves `scenario` with the default variant, adds contours at `levels` and,
/// when `target` is set, the trajectory to it (GRRP) or from it (MRAP).
ResultDocument solve_document(const Scenario& scenario, std::span<const double> levels = {},
                              std::optional<Vec2> target = std::nullopt);

}  // namespace glide
