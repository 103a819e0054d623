#include "tierselect/service.hpp"

#include <algorithm>

#include "httplib.h"
#include "json.hpp"
#include "tierselect/analysis.hpp"
#include "tierselect/scenario_io.hpp"
#include "tierselect/scoring.hpp"
#include "tierselect/version.hpp"

namespace tierselect {

using nlohmann::json;

namespace {

constexpr std::string_view kScenariosPrefix = "/api/scenarios/";

std::string_view kind_name(ParseIssueKind k) {
  switch (k) {
    case ParseIssueKind::Syntax:
      return "syntax";
    case ParseIssueKind::Validation:
      return "validation";
    case ParseIssueKind::Schema:
      break;
  }
  return "schema";
}

ApiResponse json_response(int status, const json& body) { return {status, body.dump(2) + "\n"}; }

ApiResponse error_response(int status, std::vector<json> errors) {
  return json_response(status, {{"engine_version", kEngineVersion}, {"errors", std::move(errors)}});
}

ApiResponse error_response(int status, std::string_view kind, std::string location, std::string message) {
  return error_response(status, {json{{"kind", kind}, {"location", std::move(location)}, {"message", std::move(message)}}});
}

ApiResponse parse_error_response(const ParseError& e, std::string_view prefix) {
  std::vector<json> errors;
  for (const ParseIssue& i : e.issues()) {
    std::string location = i.location;
    if (!prefix.empty() && i.kind != ParseIssueKind::Syntax) {
      location = std::string(prefix) + (location == "/" ? "" : (location.starts_with('/') ? location : "/" + location));
    }
    errors.push_back({{"kind", kind_name(i.kind)}, {"location", std::move(location)}, {"message", i.message}});
  }
  return error_response(400, std::move(errors));
}

// Adds the calibration actually used so clients can display it.
json with_calibration(json body, const Scenario& s) {
  json bounds = json::object();
  for (const auto& [id, b] : resolve_bounds(s)) {
    bounds[id] = {{"min", b.bounds.min}, {"max", b.bounds.max}, {"provenance", to_string(b.provenance)}};
  }
  body["lambda"] = s.lambda;
  body["bounds"] = std::move(bounds);
  return body;
}

// Body of the form {"scenario": {...}, ...}. Throws the ready-made 400.
struct EnvelopeError {
  ApiResponse response;
};

json parse_envelope(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body.begin(), body.end());
  } catch (const json::parse_error& e) {
    throw EnvelopeError{error_response(400, "syntax", "/", e.what())};
  }
  if (!doc.is_object()) throw EnvelopeError{error_response(400, "schema", "/", "expected an object")};
  if (!doc.contains("scenario")) {
    throw EnvelopeError{error_response(400, "schema", "/", "missing required key 'scenario'")};
  }
  return doc;
}

Scenario envelope_scenario(const json& doc) {
  try {
    return parse_scenario(doc.at("scenario").dump());
  } catch (const ParseError& e) {
    throw EnvelopeError{parse_error_response(e, "/scenario")};
  }
}

double envelope_number(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_number()) {
    throw EnvelopeError{error_response(400, "schema", std::string("/") + key, "expected a number")};
  }
  return it->get<double>();
}

ApiResponse list_scenarios(const ScenarioLibrary& library) {
  json list = json::array();
  for (const auto& [name, s] : library.entries()) {
    list.push_back({{"name", name}, {"tiers", s.tiers.size()}, {"metrics", s.metrics.size()}});
  }
  return json_response(200, {{"engine_version", kEngineVersion}, {"scenarios", std::move(list)}});
}

ApiResponse evaluate_body(std::string_view body) {
  Scenario s;
  try {
    s = parse_scenario(body);
  } catch (const ParseError& e) {
    return parse_error_response(e, "");
  }
  return {200, export_result(evaluate(s), ExportFormat::Json)};
}

ApiResponse sweep_body(std::string_view body) {
  const json doc = parse_envelope(body);
  const Scenario s = envelope_scenario(doc);
  auto param = doc.find("parameter");
  if (param == doc.end() || !param->is_string()) {
    return error_response(400, "schema", "/parameter", "expected a string");
  }
  auto steps = doc.find("steps");
  if (steps == doc.end() || !steps->is_number_integer()) {
    return error_response(400, "schema", "/steps", "expected an integer");
  }
  SweepSpec spec;
  try {
    spec.parameter = parse_sweep_parameter(param->get<std::string>());
  } catch (const AnalysisError& e) {
    return error_response(400, "request", "/parameter", e.what());
  }
  spec.lo = envelope_number(doc, "from");
  spec.hi = envelope_number(doc, "to");
  spec.steps = steps->get<int>();
  try {
    const SweepResult r = sweep(s, spec);
    return json_response(200, with_calibration(json::parse(sweep_to_json(r)), s));
  } catch (const AnalysisError& e) {
    return error_response(400, "request", "/", e.what());
  } catch (const ValidationError& e) {
    std::vector<json> errors;
    for (const auto& i : e.issues()) {
      errors.push_back({{"kind", "validation"}, {"location", i.field}, {"message", i.rule + ": " + i.message}});
    }
    return error_response(400, std::move(errors));
  }
}

ApiResponse pareto_body(std::string_view body) {
  const json doc = parse_envelope(body);
  const Scenario s = envelope_scenario(doc);
  auto objectives = doc.find("objectives");
  if (objectives == doc.end() || !objectives->is_array() ||
      !std::all_of(objectives->begin(), objectives->end(), [](const json& o) { return o.is_string(); })) {
    return error_response(400, "schema", "/objectives", "expected an array of metric ids");
  }
  try {
    const ParetoResult r = pareto_front(s, objectives->get<std::vector<std::string>>());
    return json_response(200, with_calibration(json::parse(pareto_to_json(r)), s));
  } catch (const AnalysisError& e) {
    return error_response(400, "request", "/objectives", e.what());
  }
}

}  // namespace

ScenarioLibrary ScenarioLibrary::load_directory(const std::filesystem::path& dir, std::ostream& warnings) {
  ScenarioLibrary lib;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    warnings << "scenario directory '" << dir.string() << "' not found; starting with an empty library\n";
    return lib;
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    try {
      lib.add(path.stem().string(), load_scenario_file(path));
    } catch (const std::exception& e) {
      warnings << "skipping " << path.string() << ": " << e.what() << '\n';
    }
  }
  return lib;
}

void ScenarioLibrary::add(std::string name, Scenario s) { entries_.insert_or_assign(std::move(name), std::move(s)); }

const Scenario* ScenarioLibrary::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

struct Service::Server {
  httplib::Server http;
};

Service::Service(ScenarioLibrary library, ServiceConfig config)
    : library_(std::move(library)), config_(std::move(config)) {}

Service::~Service() { stop(); }

ApiResponse Service::handle(std::string_view method, std::string_view path, std::string_view body) const {
  if (body.size() > config_.max_body_bytes) {
    return error_response(413, "request", "/",
                          "request body exceeds " + std::to_string(config_.max_body_bytes) + " bytes");
  }
  try {
    if (method == "GET" && path == "/api/scenarios") return list_scenarios(library_);
    if (method == "GET" && path.starts_with(kScenariosPrefix)) {
      const auto name = path.substr(kScenariosPrefix.size());
      const Scenario* s = library_.find(name);
      if (!s) return error_response(404, "request", std::string(path), "no scenario named '" + std::string(name) + "'");
      return {200, serialize_scenario(*s)};
    }
    if (method == "POST" && path == "/api/evaluate") return evaluate_body(body);
    if (method == "POST" && path == "/api/sweep") return sweep_body(body);
    if (method == "POST" && path == "/api/pareto") return pareto_body(body);
  } catch (const EnvelopeError& e) {
    return e.response;
  } catch (const std::exception& e) {
    return error_response(500, "internal", "/", e.what());
  }
  return error_response(404, "request", std::string(path), "no route for " + std::string(method) + " " + std::string(path));
}

int Service::bind() {
  server_ = std::make_unique<Server>();
  auto& http = server_->http;
  http.set_payload_max_length(config_.max_body_bytes);
  http.set_default_headers({
      {"Access-Control-Allow-Origin", config_.cors_origin},
      {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
      {"Access-Control-Allow-Headers", "Content-Type"},
  });

  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    ApiResponse r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(std::move(r.body), r.content_type);
  };
  http.Get(R"(/api/.*)", dispatch);
  http.Post(R"(/api/.*)", dispatch);
  http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  if (config_.static_dir) http.set_mount_point("/", config_.static_dir->string());

  if (config_.port == 0) return http.bind_to_any_port(config_.host);
  return http.bind_to_port(config_.host, config_.port) ? config_.port : -1;
}

bool Service::listen() { return server_ && server_->http.listen_after_bind(); }

void Service::stop() {
  if (server_) server_->http.stop();
}

}  // namespace tierselect
