#include "json_codec.hpp"

#include "tierselect/scenario_io.hpp"
#include "tierselect/version.hpp"

namespace tierselect::detail {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> number_or_null(const json& j, std::string_view key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

template <typename E>
E enum_field(const json& j, std::string_view key, std::optional<E> (*from)(std::string_view) noexcept) {
  const auto text = j.at(key).get<std::string>();
  auto e = from(text);
  if (!e) throw ParseError({{ParseIssueKind::Schema, "/" + std::string(key), "unknown value '" + text + "'"}});
  return *e;
}

Violation violation_from_json(const json& j) {
  Violation v;
  v.constraint = enum_field<Constraint>(j, "constraint", constraint_from_string);
  v.kind = enum_field<ViolationKind>(j, "kind", violation_kind_from_string);
  v.metric_id = j.at("metric").get<std::string>();
  v.threshold = number_or_null(j, "threshold");
  v.observed = number_or_null(j, "observed");
  return v;
}

}  // namespace

json scenario_to_json(const Scenario& s) {
  json metrics = json::array();
  for (const MetricDef& m : s.metrics) {
    json jm = {
        {"id", m.id},
        {"direction", to_string(m.direction)},
        {"weight", m.weight},
        {"units", m.units},
    };
    if (m.bounds) {
      jm["min"] = m.bounds->min;
      jm["max"] = m.bounds->max;
    }
    if (m.optional) jm["optional"] = true;
    metrics.push_back(std::move(jm));
  }

  json tiers = json::array();
  for (const TierProfile& t : s.tiers) {
    json jt = {{"id", t.id}, {"regulatory_ok", t.regulatory_ok}, {"values", json::object()}};
    if (!t.label.empty()) jt["label"] = t.label;
    for (const auto& [k, v] : t.values) jt["values"][k] = v;
    tiers.push_back(std::move(jt));
  }

  json req = {{"missing_metric_policy", to_string(s.requirements.missing_metric_policy)}};
  if (s.requirements.max_latency_ms) req["max_latency_ms"] = *s.requirements.max_latency_ms;
  if (s.requirements.min_success) req["min_success"] = *s.requirements.min_success;
  if (s.requirements.min_quality) req["min_quality"] = *s.requirements.min_quality;
  if (s.requirements.max_cost) req["max_cost"] = *s.requirements.max_cost;

  json out = {
      {"name", s.name},
      {"lambda", s.lambda},
      {"metrics", std::move(metrics)},
      {"tiers", std::move(tiers)},
      {"requirements", std::move(req)},
  };
  if (!s.description.empty()) out["description"] = s.description;
  return out;
}

json violation_to_json(const Violation& v) {
  return {
      {"constraint", to_string(v.constraint)},
      {"kind", to_string(v.kind)},
      {"metric", v.metric_id},
      {"threshold", optional_number(v.threshold)},
      {"observed", optional_number(v.observed)},
      {"description", v.describe()},
  };
}

json utility_to_json(const EffectiveUtility& u) { return optional_number(u.get()); }

json result_to_json(const EvaluationResult& r) {
  json bounds = json::object();
  for (const auto& [id, b] : r.bounds) {
    bounds[id] = {{"min", b.bounds.min}, {"max", b.bounds.max}, {"provenance", to_string(b.provenance)}};
  }

  json per_tier = json::object();
  json order = json::array();
  for (const TierReport& t : r.per_tier) {
    json violations = json::array();
    for (const auto& v : t.violations) violations.push_back(violation_to_json(v));
    json warnings = json::array();
    for (const auto& v : t.warnings) warnings.push_back(violation_to_json(v));
    json scores = json::object();
    for (const auto& [k, v] : t.scores) scores[k] = v;
    per_tier[t.tier_id] = {
        {"feasible", t.feasible},
        {"scores", std::move(scores)},
        {"u_base", optional_number(t.u_base)},
        {"u_base_imputed", t.u_base_imputed},
        {"phi", t.phi},
        {"u_eff", utility_to_json(t.u_eff)},
        {"violations", std::move(violations)},
        {"warnings", std::move(warnings)},
    };
    order.push_back(t.tier_id);
  }

  return {
      {"engine_version", kEngineVersion},
      {"scenario", r.scenario_name},
      {"lambda", r.lambda},
      {"bounds", std::move(bounds)},
      {"tier_order", std::move(order)},
      {"per_tier", std::move(per_tier)},
      {"ranking", r.ranking},
      {"winner", r.winner ? json(*r.winner) : json(nullptr)},
      {"ties", r.ties},
  };
}

EvaluationResult result_from_json(const json& j) {
  EvaluationResult r;
  r.scenario_name = j.at("scenario").get<std::string>();
  r.lambda = j.at("lambda").get<double>();
  for (const auto& [id, b] : j.at("bounds").items()) {
    r.bounds.emplace(id, ResolvedBound{Bounds{b.at("min").get<double>(), b.at("max").get<double>()},
                                       enum_field<BoundsProvenance>(b, "provenance", provenance_from_string)});
  }
  const json& per_tier = j.at("per_tier");
  for (const json& id : j.at("tier_order")) {
    const json& t = per_tier.at(id.get<std::string>());
    TierReport report;
    report.tier_id = id.get<std::string>();
    report.feasible = t.at("feasible").get<bool>();
    report.scores = t.at("scores").get<std::map<std::string, double>>();
    report.u_base = number_or_null(t, "u_base");
    report.u_base_imputed = t.at("u_base_imputed").get<bool>();
    report.phi = t.at("phi").get<double>();
    auto u = number_or_null(t, "u_eff");
    report.u_eff = u ? EffectiveUtility::of(*u) : EffectiveUtility::infeasible();
    for (const json& v : t.at("violations")) report.violations.push_back(violation_from_json(v));
    for (const json& v : t.at("warnings")) report.warnings.push_back(violation_from_json(v));
    r.per_tier.push_back(std::move(report));
  }
  r.ranking = j.at("ranking").get<std::vector<std::string>>();
  if (!j.at("winner").is_null()) r.winner = j.at("winner").get<std::string>();
  r.ties = j.at("ties").get<std::vector<std::vector<std::string>>>();
  return r;
}

}  // namespace tierselect::detail
