#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "tierselect/model.hpp"
#include "tierselect/registry.hpp"

namespace tierselect::testing {

struct GeneratorOptions {
  int max_tiers = 5;
  int max_metrics = 6;
  double missing_rate = 0.25;
  bool declared_bounds_only = false;
  bool allow_zero_weights = true;
  bool registry_directions = false;  // else random per metric
};

class ScenarioGenerator {
 public:
  explicit ScenarioGenerator(std::uint64_t seed, GeneratorOptions opts = {}) : rng_(seed), opts_(opts) {}

  std::mt19937_64& rng() { return rng_; }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  Scenario next() {
    // Threshold-bound ids come first in the pool so feasibility gets exercised.
    std::array<std::string, 8> pool{"latency_p99", "success_prob",    "quality",    "cost_per_task",
                                    "energy_per_task", "link_avail", "ops_minutes", "reduction_ratio"};
    std::shuffle(pool.begin(), pool.end(), rng_);

    Scenario s;
    s.name = "generated-" + std::to_string(counter_++);
    s.lambda = chance(0.1) ? 0.0 : uniform(0.0, 1.0);

    const int n_metrics = integer(1, opts_.max_metrics);
    for (int i = 0; i < n_metrics; ++i) {
      MetricDef m;
      m.id = pool[static_cast<std::size_t>(i)];
      m.direction = chance(0.5) ? Direction::HigherBetter : Direction::LowerBetter;
      if (opts_.registry_directions) m.direction = find_standard_metric(m.id)->direction;
      m.weight = (opts_.allow_zero_weights && chance(0.15)) ? 0.0 : uniform(0.01, 1.0);
      m.units = "u";
      if (opts_.declared_bounds_only || chance(0.3)) {
        const double a = value_for(m.id);
        const double b = chance(0.1) ? a : value_for(m.id);
        m.bounds = Bounds{std::min(a, b), std::max(a, b)};
      }
      s.metrics.push_back(std::move(m));
    }
    if (std::none_of(s.metrics.begin(), s.metrics.end(), [](const MetricDef& m) { return m.weight > 0.0; })) {
      s.metrics[static_cast<std::size_t>(integer(0, n_metrics - 1))].weight = uniform(0.01, 1.0);
    }

    const int n_tiers = integer(1, opts_.max_tiers);
    const double shared = value_for("quality");
    for (int j = 0; j < n_tiers; ++j) {
      TierProfile t;
      t.id = "T" + std::to_string(j);
      t.regulatory_ok = !chance(0.1);
      for (const MetricDef& m : s.metrics) {
        if (chance(opts_.missing_rate)) continue;
        // occasional repeated value produces degenerate bounds and ties
        t.values[m.id] = chance(0.1) ? shared : value_for(m.id);
      }
      s.tiers.push_back(std::move(t));
    }
    std::shuffle(s.tiers.begin(), s.tiers.end(), rng_);

    Requirements& r = s.requirements;
    if (chance(0.5)) r.max_latency_ms = value_for("latency_p99");
    if (chance(0.5)) r.min_success = uniform(0.0, 0.6);
    if (chance(0.5)) r.min_quality = uniform(0.0, 0.6);
    if (chance(0.5)) r.max_cost = value_for("cost_per_task");
    r.missing_metric_policy = chance(0.5) ? MissingMetricPolicy::Strict : MissingMetricPolicy::Lenient;
    return s;
  }

  // Probability-like metrics live in [0,1]; everything else in [0,100].
  double value_for(const std::string& id) {
    if (id == "success_prob" || id == "quality" || id == "link_avail") return uniform(0.0, 1.0);
    return uniform(0.0, 100.0);
  }

 private:
  std::mt19937_64 rng_;
  GeneratorOptions opts_;
  int counter_ = 0;
};

}  // namespace tierselect::testing
