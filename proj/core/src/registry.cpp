#include "tierselect/registry.hpp"

#include <algorithm>

namespace tierselect {

namespace {

MetricDef entry(std::string id, Direction d, std::string units, bool optional = false) {
  MetricDef m;
  m.id = std::move(id);
  m.direction = d;
  m.units = std::move(units);
  m.optional = optional;
  return m;
}

std::vector<MetricDef> build_registry() {
  using enum Direction;
  return {
      // timing
      entry("latency_p99", LowerBetter, "ms"),
      entry("latency_p50", LowerBetter, "ms", true),
      entry("jitter", LowerBetter, "ms", true),
      // reliability and correctness
      entry("success_prob", HigherBetter, "probability"),
      entry("quality", HigherBetter, "score (0-1)"),
      entry("sdc_prob", LowerBetter, "probability", true),
      entry("compute_avail", HigherBetter, "fraction"),
      // energy and power
      entry("energy_per_task", LowerBetter, "J"),
      entry("peak_power", LowerBetter, "W"),
      entry("power_margin", HigherBetter, "W"),
      entry("power_gen", HigherBetter, "W", true),
      // thermal
      entry("thermal_margin", HigherBetter, "degC"),
      // communication
      entry("link_avail", HigherBetter, "probability"),
      entry("contact_duty", HigherBetter, "fraction"),
      entry("reduction_ratio", HigherBetter, "ratio"),
      entry("throughput", HigherBetter, "tasks/s", true),
      // cost and operations
      entry("cost_per_task", LowerBetter, "USD"),
      entry("ops_minutes", LowerBetter, "min / 1000 tasks"),
      // platform
      entry("orbital_altitude", LowerBetter, "km"),
      entry("compute_mass", LowerBetter, "kg"),
  };
}

}  // namespace

const std::vector<MetricDef>& standard_registry() {
  static const std::vector<MetricDef> registry = build_registry();
  return registry;
}

const MetricDef* find_standard_metric(std::string_view id) {
  const auto& reg = standard_registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const MetricDef& m) { return m.id == id; });
  return it == reg.end() ? nullptr : &*it;
}

}  // namespace tierselect
