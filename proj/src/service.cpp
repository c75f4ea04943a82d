#include "glide/service.hpp"

#include <cmath>
#include <iostream>

#include <httplib.h>

#include "glide/document.hpp"
#include "glide/grrp.hpp"
#include "glide/mrap.hpp"
#include "glide/trajectory.hpp"

namespace glide {

using nlohmann::json;

namespace {

struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

HttpResponse json_response(int status, const json& body) { return {status, body.dump()}; }

HttpResponse error_response(const Error& e) {
  return json_response(http_status(e.code()), error_body(to_string(e.code()), e.what(), e.field()));
}

Vec2 target_from(const json& body) {
  if (!body.contains("target")) throw validation_error("target", "missing");
  const json& t = body["target"];
  if (!t.is_array() || t.size() != 2 || !t[0].is_number() || !t[1].is_number())
    throw validation_error("target", "must be [x, y]");
  return {t[0].get<double>(), t[1].get<double>()};
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::infeasible: return 422;
    case ErrorCode::validation:
    case ErrorCode::unsupported_configuration:
    case ErrorCode::wind_exceeds_airspeed:
    case ErrorCode::io: return 400;
  }
  return 500;
}

json error_body(std::string_view code, std::string_view message, std::string_view field) {
  json e = {{"code", code}, {"message", message}};
  if (!field.empty()) e["field"] = field;
  return {{"error", e}};
}

SolveService::SolveService(ServiceOptions options) : options_(options) {}

HttpResponse SolveService::handle(std::string_view method, std::string_view path, std::string_view body) {
  try {
    if (path == "/api/presets") {
      if (method != "GET") return json_response(405, error_body("method_not_allowed", "use GET"));
      return presets();
    }
    if (path != "/api/solve" && path != "/api/trace") return json_response(404, error_body("not_found", "no such endpoint"));
    if (method != "POST") return json_response(405, error_body("method_not_allowed", "use POST"));
    json doc;
    try {
      doc = json::parse(body);
    } catch (const json::parse_error& e) {
      throw validation_error("body", e.what());
    }
    if (!doc.is_object()) throw validation_error("body", "must be a JSON object");
    return path == "/api/solve" ? solve(doc) : trace(doc);
  } catch (const Error& e) {
    return error_response(e);
  } catch (const TooLarge& e) {
    return json_response(422, error_body("grid_too_large", e.what(), "grid"));
  } catch (const json::exception& e) {
    return json_response(400, error_body("validation", e.what()));
  } catch (const std::exception& e) {
    return json_response(500, error_body("internal", e.what()));
  }
}

HttpResponse SolveService::presets() const {
  json out = json::array();
  for (const auto& p : list_presets())
    out.push_back({{"name", p.name}, {"description", p.description}, {"problem", p.problem}});
  return json_response(200, out);
}

Scenario SolveService::scenario_from(const json& doc) const {
  if (doc.contains("grid") && doc["grid"].is_object()) {
    const json& g = doc["grid"];
    if (g.contains("n_cols") && g.contains("n_rows") && g["n_cols"].is_number_integer() &&
        g["n_rows"].is_number_integer()) {
      const double nodes = g["n_cols"].get<double>() * g["n_rows"].get<double>();
      if (nodes > static_cast<double>(options_.max_nodes))
        throw TooLarge("grid has more than " + std::to_string(options_.max_nodes) + " nodes");
    }
  }
  Scenario s = load_scenario(doc).scenario;
  if (s.grid.node_count() > options_.max_nodes)
    throw TooLarge("grid has more than " + std::to_string(options_.max_nodes) + " nodes");
  return s;
}

HttpResponse SolveService::solve(const json& body) {
  const bool wrapped = body.contains("scenario");
  Stored stored{scenario_from(wrapped ? body["scenario"] : body), nullptr, nullptr};
  const Scenario& s = stored.scenario;

  ResultDocument doc;
  if (s.is_grrp()) {
    auto r = std::make_shared<GrrpResult>(solve_grrp(s, GrrpVariant::automatic));
    doc = make_document(s, *r);
    stored.grrp = std::move(r);
  } else {
    auto r = std::make_shared<MrapResult>(solve_mrap(s));
    doc = make_document(s, *r);
    stored.mrap = std::move(r);
  }
  std::vector<double> levels;
  if (wrapped && body.contains("levels")) {
    const json& l = body["levels"];
    if (!l.is_array()) throw validation_error("levels", "must be an array of numbers");
    for (const json& v : l) {
      if (!v.is_number() || !std::isfinite(v.get<double>())) throw validation_error("levels", "must be finite numbers");
      levels.push_back(v.get<double>());
    }
  } else {
    levels = default_contour_levels(doc.field, options_.default_contour_count);
  }
  doc.contours = extract_contours(doc.grid, doc.field, levels);
  doc.meta.result_id = remember(std::move(stored));
  return {200, serialize_document(doc)};
}

HttpResponse SolveService::trace(const json& body) {
  const Vec2 target = target_from(body);
  std::shared_ptr<const Stored> stored;
  std::string id;
  if (body.contains("result_id")) {
    if (!body["result_id"].is_string()) throw validation_error("result_id", "must be a string");
    id = body["result_id"].get<std::string>();
    stored = lookup(id);
    if (!stored) throw validation_error("result_id", "unknown or expired result '" + id + "'");
  } else if (body.contains("scenario")) {
    Stored fresh{scenario_from(body["scenario"]), nullptr, nullptr};
    if (fresh.scenario.is_grrp()) fresh.grrp = std::make_shared<GrrpResult>(solve_grrp(fresh.scenario, GrrpVariant::automatic));
    else fresh.mrap = std::make_shared<MrapResult>(solve_mrap(fresh.scenario));
    id = remember(fresh);
    stored = lookup(id);
  } else {
    throw validation_error("result_id", "give a result_id or an inline scenario");
  }
  const Trajectory t = stored->grrp ? trace_grrp(*stored->grrp, stored->scenario, target)
                                    : trace_mrap(*stored->mrap, stored->scenario, target);
  return json_response(200, {{"result_id", id}, {"trajectory", to_json(t)}});
}

std::string SolveService::remember(Stored stored) {
  std::lock_guard lock(mutex_);
  std::string id = "r" + std::to_string(next_id_++);
  results_[id] = std::make_shared<const Stored>(std::move(stored));
  order_.push_back(id);
  while (order_.size() > options_.cached_results) {
    results_.erase(order_.front());
    order_.pop_front();
  }
  return id;
}

std::shared_ptr<const SolveService::Stored> SolveService::lookup(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = results_.find(id);
  return it == results_.end() ? nullptr : it->second;
}

void SolveService::mount(httplib::Server& server) {
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body, "application/json");
  };
  server.Get("/api/presets", route);
  server.Post("/api/solve", route);
  server.Post("/api/trace", route);
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

void serve(const std::string& host, int port, ServiceOptions options) {
  SolveService service(options);
  httplib::Server server;
  service.mount(server);
  std::cerr << "listening on http://" << host << ":" << port << "\n";
  if (!server.listen(host, port)) throw Error(ErrorCode::io, "cannot listen on " + host + ":" + std::to_string(port), "port");
}

}  // namespace glide
