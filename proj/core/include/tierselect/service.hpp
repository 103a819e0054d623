#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tierselect/model.hpp"

namespace tierselect {

/// Named scenarios available to the service. Read-only once built.
class ScenarioLibrary {
 public:
  ScenarioLibrary() = default;

  /// Loads every `*.json` file in `dir`, named by file stem. Files that fail
  /// to parse are skipped with a message on `warnings`. A missing directory
  /// yields an empty library plus a warning.
  static ScenarioLibrary load_directory(const std::filesystem::path& dir, std::ostream& warnings);

  void add(std::string name, Scenario s);
  const Scenario* find(std::string_view name) const;
  const std::map<std::string, Scenario, std::less<>>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, Scenario, std::less<>> entries_;
};

struct ServiceConfig {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::size_t max_body_bytes = 1 << 20;
  std::string cors_origin = "*";
  std::optional<std::filesystem::path> static_dir;  // web UI assets, mounted at "/"
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// HTTP API over the scoring engine.
///
///   GET  /api/scenarios          -> library listing
///   GET  /api/scenarios/<name>   -> scenario document
///   POST /api/evaluate           -> evaluation result (body: scenario document)
///   POST /api/sweep              -> {"scenario", "parameter", "from", "to", "steps"}
///   POST /api/pareto             -> {"scenario", "objectives"}
///
/// Evaluation is request-scoped: the scenario travels in the body and the
/// library is never mutated. Errors are 400 with an "errors" list, 404 for
/// unknown routes or names, 413 for bodies above the size cap.
class Service {
 public:
  Service(ScenarioLibrary library, ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Routes one request without any networking.
  ApiResponse handle(std::string_view method, std::string_view path, std::string_view body) const;

  /// Binds to config.host:config.port (port 0 picks a free one) and returns
  /// the bound port, or -1 on failure.
  int bind();

  /// Serves until stop() is called. Requires a successful bind().
  bool listen();

  void stop();

  const ServiceConfig& config() const noexcept { return config_; }

 private:
  struct Server;

  ScenarioLibrary library_;
  ServiceConfig config_;
  std::unique_ptr<Server> server_;
};

}  // namespace tierselect
