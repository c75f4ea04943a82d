#include "glide/document.hpp"

#include <cmath>
#include <fstream>

#include "glide/errors.hpp"
#include "glide/grrp.hpp"
#include "glide/mrap.hpp"

namespace glide {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw validation_error(path + "." + key, "missing");
  return j[key];
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw validation_error(path, "must be a number");
  return j.get<double>();
}

Vec2 point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() < 2) throw validation_error(path, "must be [x, y]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

}  // namespace

json to_json(const Trajectory& t) {
  json vertices = json::array();
  for (const auto& v : t.vertices) vertices.push_back({v.position.x, v.position.y, v.altitude});
  return {{"kind", to_string(t.kind)},
          {"termination", to_string(t.termination)},
          {"arc_length", t.arc_length},
          {"vertices", vertices}};
}

namespace {

Trajectory trajectory_from_json(const json& j, const std::string& path) {
  Trajectory t;
  const std::string kind = member(j, "kind", path).get<std::string>();
  if (kind == "grrp-optimal") t.kind = TrajectoryKind::grrp_optimal;
  else if (kind == "mrap-feasible") t.kind = TrajectoryKind::mrap_feasible;
  else throw validation_error(path + ".kind", "unknown trajectory kind '" + kind + "'");
  const std::string term = member(j, "termination", path).get<std::string>();
  if (term == "reached-origin") t.termination = Termination::reached_origin;
  else if (term == "max-steps") t.termination = Termination::max_steps;
  else if (term == "stalled") t.termination = Termination::stalled;
  else throw validation_error(path + ".termination", "unknown termination '" + term + "'");
  t.arc_length = number(member(j, "arc_length", path), path + ".arc_length");
  const json& vs = member(j, "vertices", path);
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const std::string p = path + ".vertices[" + std::to_string(k) + "]";
    if (!vs[k].is_array() || vs[k].size() != 3) throw validation_error(p, "must be [x, y, z]");
    t.vertices.push_back({{number(vs[k][0], p), number(vs[k][1], p)}, number(vs[k][2], p)});
  }
  return t;
}

DocumentMeta meta_from(const SolveMeta& m, std::string problem) {
  DocumentMeta d;
  d.problem = std::move(problem);
  d.variant = m.variant;
  d.runtime_s = m.runtime_s;
  d.seed_radius = m.seed_radius;
  d.anisotropy = m.anisotropy;
  d.accepted_count = m.accepted_count;
  d.snap_distance = m.snap_distance;
  return d;
}

}  // namespace

json to_json(const ResultDocument& doc) {
  json field = json::array();
  for (double v : doc.field) field.push_back(number_or_null(v));
  json mask = json::array();
  for (std::uint8_t m : doc.reachable_mask) mask.push_back(m ? 1 : 0);
  json contours = json::array();
  for (const auto& c : doc.contours) {
    json lines = json::array();
    for (const auto& line : c.polylines) {
      json pts = json::array();
      for (Vec2 p : line) pts.push_back({p.x, p.y});
      lines.push_back(pts);
    }
    contours.push_back({{"level", c.level}, {"polylines", lines}});
  }
  json trajectories = json::array();
  for (const auto& t : doc.trajectories) trajectories.push_back(to_json(t));
  json meta = {{"problem", doc.meta.problem},
               {"variant", doc.meta.variant},
               {"runtime_s", doc.meta.runtime_s},
               {"seed_radius", doc.meta.seed_radius},
               {"anisotropy", doc.meta.anisotropy},
               {"accepted_count", doc.meta.accepted_count},
               {"snap_distance", doc.meta.snap_distance},
               {"grid",
                {{"n_cols", doc.grid.n_cols},
                 {"n_rows", doc.grid.n_rows},
                 {"spacing", doc.grid.spacing},
                 {"origin", {doc.grid.origin.x, doc.grid.origin.y}}}}};
  if (!doc.meta.result_id.empty()) meta["result_id"] = doc.meta.result_id;
  return {{"schema_version", doc.schema_version},
          {"scenario", doc.scenario},
          {"field", field},
          {"reachable_mask", mask},
          {"contours", contours},
          {"trajectories", trajectories},
          {"meta", meta}};
}

ResultDocument document_from_json(const json& j) {
  ResultDocument doc;
  const json& version = member(j, "schema_version", "document");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    throw validation_error("document.schema_version", "unsupported schema version");
  doc.schema_version = version.get<int>();
  doc.scenario = member(j, "scenario", "document");

  const json& meta = member(j, "meta", "document");
  const json& grid = member(meta, "grid", "meta");
  doc.grid.n_cols = member(grid, "n_cols", "meta.grid").get<int>();
  doc.grid.n_rows = member(grid, "n_rows", "meta.grid").get<int>();
  doc.grid.spacing = number(member(grid, "spacing", "meta.grid"), "meta.grid.spacing");
  doc.grid.origin = point(member(grid, "origin", "meta.grid"), "meta.grid.origin");
  doc.grid.validate();
  doc.meta.problem = member(meta, "problem", "meta").get<std::string>();
  doc.meta.variant = member(meta, "variant", "meta").get<std::string>();
  doc.meta.runtime_s = number(member(meta, "runtime_s", "meta"), "meta.runtime_s");
  doc.meta.seed_radius = number(member(meta, "seed_radius", "meta"), "meta.seed_radius");
  doc.meta.anisotropy = number(member(meta, "anisotropy", "meta"), "meta.anisotropy");
  doc.meta.accepted_count = member(meta, "accepted_count", "meta").get<std::size_t>();
  doc.meta.snap_distance = number(member(meta, "snap_distance", "meta"), "meta.snap_distance");
  if (meta.contains("result_id")) doc.meta.result_id = meta["result_id"].get<std::string>();

  const json& field = member(j, "field", "document");
  if (!field.is_array() || field.size() != doc.grid.node_count())
    throw validation_error("document.field", "length must be n_rows * n_cols");
  doc.field.reserve(field.size());
  for (const json& v : field) doc.field.push_back(v.is_null() ? kInfinity : number(v, "document.field"));
  const json& mask = member(j, "reachable_mask", "document");
  if (!mask.is_array() || mask.size() != doc.grid.node_count())
    throw validation_error("document.reachable_mask", "length must be n_rows * n_cols");
  for (const json& m : mask) doc.reachable_mask.push_back(m.get<int>() != 0 ? 1 : 0);

  const json& contours = member(j, "contours", "document");
  for (std::size_t c = 0; c < contours.size(); ++c) {
    const std::string path = "document.contours[" + std::to_string(c) + "]";
    ContourLevel level;
    level.level = number(member(contours[c], "level", path), path + ".level");
    for (const json& line : member(contours[c], "polylines", path)) {
      std::vector<Vec2> pts;
      for (const json& p : line) pts.push_back(point(p, path + ".polylines"));
      level.polylines.push_back(std::move(pts));
    }
    doc.contours.push_back(std::move(level));
  }
  const json& trajectories = member(j, "trajectories", "document");
  for (std::size_t t = 0; t < trajectories.size(); ++t)
    doc.trajectories.push_back(trajectory_from_json(trajectories[t], "document.trajectories[" + std::to_string(t) + "]"));
  return doc;
}

std::string serialize_document(const ResultDocument& doc) { return to_json(doc).dump(); }

ResultDocument parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error("document", e.what());
  }
  try {
    return document_from_json(j);
  } catch (const json::exception& e) {
    throw validation_error("document", e.what());
  }
}

void write_document(const std::filesystem::path& path, const ResultDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path.string() + "'", "out");
  out << serialize_document(doc) << '\n';
  if (!out) throw Error(ErrorCode::io, "failed writing '" + path.string() + "'", "out");
}

ResultDocument make_document(const Scenario& scenario, const GrrpResult& result) {
  ResultDocument doc;
  doc.scenario = scenario_to_json(scenario);
  doc.grid = scenario.grid;
  doc.field = result.U;
  doc.reachable_mask = result.reachable;
  doc.meta = meta_from(result.meta, "grrp");
  return doc;
}

ResultDocument make_document(const Scenario& scenario, const MrapResult& result) {
  ResultDocument doc;
  doc.scenario = scenario_to_json(scenario);
  doc.grid = scenario.grid;
  doc.field = result.V;
  doc.reachable_mask.resize(result.V.size());
  for (std::size_t k = 0; k < result.V.size(); ++k) doc.reachable_mask[k] = std::isfinite(result.V[k]) ? 1 : 0;
  doc.meta = meta_from(result.meta, "mrap");
  return doc;
}

ResultDocument solve_document(const Scenario& scenario, std::span<const double> levels, std::optional<Vec2> target) {
  ResultDocument doc;
  if (scenario.is_grrp()) {
    const GrrpResult r = solve_grrp(scenario, GrrpVariant::automatic);
    doc = make_document(scenario, r);
    if (target) doc.trajectories.push_back(trace_grrp(r, scenario, *target));
  } else {
    const MrapResult r = solve_mrap(scenario);
    doc = make_document(scenario, r);
    if (target) doc.trajectories.push_back(trace_mrap(r, scenario, *target));
  }
  if (!levels.empty()) doc.contours = extract_contours(doc.grid, doc.field, levels);
  return doc;
}

}  // namespace glide
