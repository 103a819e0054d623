#include "tierselect/scenario_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "json_codec.hpp"
#include "tierselect/registry.hpp"

namespace tierselect {

using nlohmann::json;

namespace {

std::string join_issues(const std::vector<ParseIssue>& issues) {
  std::string out = "cannot parse scenario";
  for (const auto& i : issues) {
    out += "; ";
    out += i.location;
    out += ": ";
    out += i.message;
  }
  return out;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

// Walks a parsed document, recording every schema problem with its JSON
// pointer instead of stopping at the first one.
class SchemaReader {
 public:
  std::vector<ParseIssue>& issues() { return issues_; }

  void error(const std::string& at, std::string message) {
    issues_.push_back({ParseIssueKind::Schema, at.empty() ? "/" : at, std::move(message)});
  }

  bool expect_object(const json& j, const std::string& at) {
    if (j.is_object()) return true;
    error(at, "expected an object");
    return false;
  }

  void reject_unknown(const json& obj, const std::string& at, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        error(at + "/" + key, "unknown key '" + key + "'");
      }
    }
  }

  const json* required(const json& obj, std::string_view key, const std::string& at) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      error(at, "missing required key '" + std::string(key) + "'");
      return nullptr;
    }
    return &*it;
  }

  const json* optional(const json& obj, std::string_view key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  std::optional<double> number(const json* j, const std::string& at) {
    if (!j) return std::nullopt;
    if (!j->is_number()) {
      error(at, "expected a number");
      return std::nullopt;
    }
    return j->get<double>();
  }

  std::optional<std::string> string(const json* j, const std::string& at) {
    if (!j) return std::nullopt;
    if (!j->is_string()) {
      error(at, "expected a string");
      return std::nullopt;
    }
    return j->get<std::string>();
  }

  std::optional<bool> boolean(const json* j, const std::string& at) {
    if (!j) return std::nullopt;
    if (!j->is_boolean()) {
      error(at, "expected true or false");
      return std::nullopt;
    }
    return j->get<bool>();
  }

 private:
  std::vector<ParseIssue> issues_;
};

MetricDef read_metric(SchemaReader& r, const json& j, const std::string& at) {
  MetricDef m;
  if (!r.expect_object(j, at)) return m;
  r.reject_unknown(j, at, {"id", "direction", "weight", "units", "min", "max", "optional"});

  m.id = r.string(r.required(j, "id", at), at + "/id").value_or("");
  const MetricDef* standard = find_standard_metric(m.id);

  if (const json* d = r.optional(j, "direction")) {
    if (auto text = r.string(d, at + "/direction")) {
      if (auto dir = direction_from_string(*text)) {
        m.direction = *dir;
      } else {
        r.error(at + "/direction", "unknown direction '" + *text + "' (expected higher_better or lower_better)");
      }
    }
  } else if (standard) {
    m.direction = standard->direction;
  } else if (!m.id.empty()) {
    r.error(at, "missing required key 'direction' (metric '" + m.id + "' is not in the standard registry)");
  }

  m.weight = r.number(r.required(j, "weight", at), at + "/weight").value_or(0.0);

  if (const json* u = r.optional(j, "units")) {
    m.units = r.string(u, at + "/units").value_or("");
  } else if (standard) {
    m.units = standard->units;
  }

  const json* lo = r.optional(j, "min");
  const json* hi = r.optional(j, "max");
  if (lo && hi) {
    auto min = r.number(lo, at + "/min");
    auto max = r.number(hi, at + "/max");
    if (min && max) m.bounds = Bounds{*min, *max};
  } else if (lo || hi) {
    r.error(at, "bounds need both 'min' and 'max'");
  }

  m.optional = r.boolean(r.optional(j, "optional"), at + "/optional").value_or(false);
  return m;
}

TierProfile read_tier(SchemaReader& r, const json& j, const std::string& at) {
  TierProfile t;
  if (!r.expect_object(j, at)) return t;
  r.reject_unknown(j, at, {"id", "label", "regulatory_ok", "values"});
  t.id = r.string(r.required(j, "id", at), at + "/id").value_or("");
  t.label = r.string(r.optional(j, "label"), at + "/label").value_or("");
  t.regulatory_ok = r.boolean(r.required(j, "regulatory_ok", at), at + "/regulatory_ok").value_or(true);
  if (const json* values = r.required(j, "values", at)) {
    if (r.expect_object(*values, at + "/values")) {
      for (const auto& [key, v] : values->items()) {
        if (auto x = r.number(&v, at + "/values/" + key)) t.values.emplace(key, *x);
      }
    }
  }
  return t;
}

Requirements read_requirements(SchemaReader& r, const json& j, const std::string& at) {
  Requirements req;
  if (!r.expect_object(j, at)) return req;
  r.reject_unknown(j, at, {"max_latency_ms", "min_success", "min_quality", "max_cost", "missing_metric_policy"});
  req.max_latency_ms = r.number(r.optional(j, "max_latency_ms"), at + "/max_latency_ms");
  req.min_success = r.number(r.optional(j, "min_success"), at + "/min_success");
  req.min_quality = r.number(r.optional(j, "min_quality"), at + "/min_quality");
  req.max_cost = r.number(r.optional(j, "max_cost"), at + "/max_cost");
  const std::string policy_at = at + "/missing_metric_policy";
  if (auto text = r.string(r.required(j, "missing_metric_policy", at), policy_at)) {
    if (auto p = policy_from_string(*text)) {
      req.missing_metric_policy = *p;
    } else {
      r.error(policy_at, "unknown policy '" + *text + "' (expected strict or lenient)");
    }
  }
  return req;
}

}  // namespace

ParseError::ParseError(std::vector<ParseIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

Scenario parse_scenario(std::string_view text) {
  json doc;
  const bool blank = std::all_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (blank) {
    doc = json::object();
  } else {
    try {
      doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      throw ParseError({{ParseIssueKind::Syntax, line_column(text, e.byte == 0 ? 0 : e.byte - 1), e.what()}});
    }
  }

  SchemaReader r;
  Scenario s;
  if (!r.expect_object(doc, "")) throw ParseError(std::move(r.issues()));
  r.reject_unknown(doc, "", {"name", "description", "lambda", "metrics", "tiers", "requirements"});

  s.name = r.string(r.required(doc, "name", ""), "/name").value_or("");
  s.description = r.string(r.optional(doc, "description"), "/description").value_or("");
  s.lambda = r.number(r.required(doc, "lambda", ""), "/lambda").value_or(0.0);

  if (const json* metrics = r.required(doc, "metrics", "")) {
    if (metrics->is_array()) {
      for (std::size_t i = 0; i < metrics->size(); ++i) {
        s.metrics.push_back(read_metric(r, (*metrics)[i], "/metrics/" + std::to_string(i)));
      }
    } else {
      r.error("/metrics", "expected an array");
    }
  }
  if (const json* tiers = r.required(doc, "tiers", "")) {
    if (tiers->is_array()) {
      for (std::size_t i = 0; i < tiers->size(); ++i) {
        s.tiers.push_back(read_tier(r, (*tiers)[i], "/tiers/" + std::to_string(i)));
      }
    } else {
      r.error("/tiers", "expected an array");
    }
  }
  if (const json* req = r.required(doc, "requirements", "")) {
    s.requirements = read_requirements(r, *req, "/requirements");
  }

  if (!r.issues().empty()) throw ParseError(std::move(r.issues()));

  auto invalid = validate_scenario(s);
  if (!invalid.empty()) {
    std::vector<ParseIssue> issues;
    for (auto& v : invalid) {
      issues.push_back({ParseIssueKind::Validation, std::move(v.field), v.rule + ": " + v.message});
    }
    throw ParseError(std::move(issues));
  }
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  return detail::scenario_to_json(s).dump(2) + "\n";
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read scenario file '" + path.string() + "'");
  return parse_scenario(buf.str());
}

}  // namespace tierselect
