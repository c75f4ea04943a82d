#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include <json.hpp>

#include "glide/errors.hpp"
#include "glide/result.hpp"
#include "glide/scenario.hpp"

namespace httplib {
class Server;
}

namespace glide {

struct ServiceOptions {
  std::size_t max_nodes = 1'000'000;
  /// Solves kept for trace requests by result id.
  std::size_t cached_results = 32;
  int default_contour_count = 10;
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

/// HTTP status for a library error: 400 for bad input, 422 for infeasible
/// problems.
int http_status(ErrorCode code);

/// Machine-readable error body: {"error": {"code", "message", "field"}}.
nlohmann::json error_body(std::string_view code, std::string_view message, std::string_view field = {});

/// Request handling for the solve API, independent of the transport.
///   GET  /api/presets
///   POST /api/solve   scenario document, or {"scenario": ..., "levels": [...]}
///   POST /api/trace   {"result_id": ..., "target": [x, y]} or {"scenario": ..., "target": [x, y]}
class SolveService {
 public:
  explicit SolveService(ServiceOptions options = {});

  HttpResponse handle(std::string_view method, std::string_view path, std::string_view body);

  /// Routes the endpoints above on `server`.
  void mount(httplib::Server& server);

 private:
  struct Stored {
    Scenario scenario;
    std::shared_ptr<const GrrpResult> grrp;
    std::shared_ptr<const MrapResult> mrap;
  };

  HttpResponse presets() const;
  HttpResponse solve(const nlohmann::json& body);
  HttpResponse trace(const nlohmann::json& body);
  Scenario scenario_from(const nlohmann::json& doc) const;
  std::string remember(Stored stored);
  std::shared_ptr<const Stored> lookup(const std::string& id) const;

  ServiceOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const Stored>> results_;
  std::deque<std::string> order_;
  std::size_t next_id_ = 1;
};

/// Serves the API on host:port until the process is stopped.
void serve(const std::string& host, int port, ServiceOptions options = {});

}  // namespace glide
