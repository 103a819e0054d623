#include <cmath>
#include <set>
#include <string>

#include "tierselect/model.hpp"

namespace tierselect {

namespace {

std::string join_messages(const std::vector<ValidationIssue>& issues) {
  std::string out = "invalid scenario";
  for (const auto& i : issues) {
    out += "; ";
    out += i.field;
    out += ": ";
    out += i.message;
  }
  return out;
}

std::string indexed(std::string_view list, std::size_t i) {
  return std::string(list) + "[" + std::to_string(i) + "]";
}

class Collector {
 public:
  void add(std::string field, std::string rule, std::string message) {
    issues_.push_back({std::move(field), std::move(rule), std::move(message)});
  }
  std::vector<ValidationIssue> take() { return std::move(issues_); }

 private:
  std::vector<ValidationIssue> issues_;
};

void check_unit_interval(Collector& c, const std::optional<double>& v, const char* field) {
  if (!v) return;
  if (!std::isfinite(*v)) {
    c.add(std::string("requirements.") + field, "finite", "threshold must be a finite number");
  } else if (*v < 0.0 || *v > 1.0) {
    c.add(std::string("requirements.") + field, "range [0,1]", "threshold must lie in [0, 1]");
  }
}

void check_finite(Collector& c, const std::optional<double>& v, const char* field) {
  if (v && !std::isfinite(*v)) {
    c.add(std::string("requirements.") + field, "finite", "threshold must be a finite number");
  }
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::invalid_argument(join_messages(issues)), issues_(std::move(issues)) {}

std::vector<ValidationIssue> validate_scenario(const Scenario& s) {
  Collector c;

  if (!std::isfinite(s.lambda) || s.lambda < 0.0 || s.lambda > 1.0) {
    c.add("lambda", "range [0,1]", "penalty parameter lambda must lie in [0, 1]");
  }

  std::set<std::string, std::less<>> metric_ids;
  bool any_positive_weight = false;
  for (std::size_t i = 0; i < s.metrics.size(); ++i) {
    const MetricDef& m = s.metrics[i];
    const std::string at = indexed("metrics", i);
    if (m.id.empty()) c.add(at + ".id", "non-empty", "metric id must not be empty");
    if (!metric_ids.insert(m.id).second) {
      c.add(at + ".id", "unique", "duplicate metric id '" + m.id + "'");
    }
    if (!std::isfinite(m.weight)) {
      c.add(at + ".weight", "finite", "weight must be a finite number");
    } else if (m.weight < 0.0) {
      c.add(at + ".weight", "non-negative", "weight of '" + m.id + "' must be >= 0");
    } else if (m.weight > 0.0) {
      any_positive_weight = true;
    }
    if (m.bounds) {
      if (!std::isfinite(m.bounds->min) || !std::isfinite(m.bounds->max)) {
        c.add(at + ".bounds", "finite", "bounds must be finite numbers");
      } else if (m.bounds->min > m.bounds->max) {
        c.add(at + ".bounds", "min <= max", "bounds of '" + m.id + "' have min > max");
      }
    }
  }
  if (s.metrics.empty()) {
    c.add("metrics", "non-empty", "scenario declares no metrics");
  } else if (!any_positive_weight) {
    c.add("metrics", "positive weight", "at least one metric must have weight > 0");
  }

  std::set<std::string, std::less<>> tier_ids;
  for (std::size_t i = 0; i < s.tiers.size(); ++i) {
    const TierProfile& t = s.tiers[i];
    const std::string at = indexed("tiers", i);
    if (t.id.empty()) c.add(at + ".id", "non-empty", "tier id must not be empty");
    if (!tier_ids.insert(t.id).second) {
      c.add(at + ".id", "unique", "duplicate tier id '" + t.id + "'");
    }
    for (const auto& [metric, v] : t.values) {
      const std::string field = at + ".values." + metric;
      if (!metric_ids.contains(metric)) {
        c.add(field, "declared metric", "tier '" + t.id + "' reports undeclared metric '" + metric + "'");
      }
      if (!std::isfinite(v)) c.add(field, "finite", "metric value must be a finite number");
    }
  }
  if (s.tiers.empty()) c.add("tiers", "non-empty", "scenario declares no tiers");

  const Requirements& r = s.requirements;
  check_finite(c, r.max_latency_ms, "max_latency_ms");
  check_unit_interval(c, r.min_success, "min_success");
  check_unit_interval(c, r.min_quality, "min_quality");
  check_finite(c, r.max_cost, "max_cost");

  return c.take();
}

void require_valid(const Scenario& s) {
  auto issues = validate_scenario(s);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

}  // namespace tierselect
