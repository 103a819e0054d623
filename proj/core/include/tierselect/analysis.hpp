#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tierselect/model.hpp"

namespace tierselect {

/// Raised for malformed sweep/Pareto requests (not for invalid scenarios,
/// which raise ValidationError).
class AnalysisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ThresholdKind { MaxLatency, MinSuccess, MinQuality, MaxCost };

std::string_view to_string(ThresholdKind k) noexcept;  // the requirements field name
std::optional<ThresholdKind> threshold_from_string(std::string_view s) noexcept;

namespace sweep_param {
struct Lambda {
  friend bool operator==(const Lambda&, const Lambda&) = default;
};
struct MetricWeight {
  std::string metric_id;
  friend bool operator==(const MetricWeight&, const MetricWeight&) = default;
};
struct Threshold {
  ThresholdKind which = ThresholdKind::MaxLatency;
  friend bool operator==(const Threshold&, const Threshold&) = default;
};
}  // namespace sweep_param

using SweepParameter = std::variant<sweep_param::Lambda, sweep_param::MetricWeight, sweep_param::Threshold>;

/// "lambda", "weight:<metric-id>", or "threshold:<requirements field>".
SweepParameter parse_sweep_parameter(std::string_view text);
std::string to_string(const SweepParameter& p);

struct SweepSpec {
  SweepParameter parameter;
  double lo = 0.0;
  double hi = 1.0;
  int steps = 2;
};

struct SweepRow {
  double value = 0.0;
  std::optional<std::string> winner;
  std::map<std::string, EffectiveUtility> u_eff;  // every tier; sentinel when infeasible
  bool crossover = false;                         // winner differs from the previous row
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepRow> rows;
  std::vector<std::size_t> crossovers;  // indices of rows flagged as crossovers
};

/// Evaluates `s` at `steps` evenly spaced values of one parameter over
/// [lo, hi], both ends included. Requires lo < hi and steps >= 2.
SweepResult sweep(const Scenario& s, const SweepSpec& spec);

/// Returns a copy of `s` with the swept parameter set to `value`.
Scenario with_parameter(const Scenario& s, const SweepParameter& p, double value);

struct ParetoResult {
  std::vector<std::string> objectives;
  std::vector<std::string> nondominated;
  std::map<std::string, std::string> dominated;  // tier -> a tier that dominates it
  std::vector<std::string> excluded;             // feasible, but missing an objective
  std::vector<std::string> infeasible;
};

/// True iff `a` is at least as good as `b` on every objective (raw values,
/// direction-aware) and strictly better on at least one.
bool dominates(const TierProfile& a, const TierProfile& b, std::span<const MetricDef* const> objectives);

/// Nondominated feasible tiers over raw objective values.
ParetoResult pareto_front(const Scenario& s, const std::vector<std::string>& objectives);

struct ContributionRow {
  std::string metric_id;
  double raw = 0.0;
  ResolvedBound bounds;
  double score = 0.0;
  double weight = 0.0;
  double contribution = 0.0;  // weight * score / W_known
};

struct TierExplanation {
  std::string tier_id;
  bool feasible = false;
  std::vector<ContributionRow> contributions;  // empty for infeasible tiers
  std::vector<std::string> unreported;         // positively weighted metrics the tier lacks
  std::optional<double> u_base;
  bool u_base_imputed = false;
  double phi = 0.0;
  double penalty = 0.0;  // lambda * (1 - phi)
  EffectiveUtility u_eff = EffectiveUtility::infeasible();
  std::vector<Violation> violations;
  std::vector<Violation> warnings;
};

struct Explanation {
  std::string scenario_name;
  double lambda = 0.0;
  std::optional<std::string> winner;
  std::vector<TierExplanation> tiers;

  const TierExplanation* find(std::string_view tier_id) const;
};

/// Per-tier breakdown of how `result` was reached. Throws AnalysisError if
/// `result` was not produced from `s`.
Explanation explain(const EvaluationResult& result, const Scenario& s);

}  // namespace tierselect
