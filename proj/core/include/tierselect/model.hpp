#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tierselect {

/// Preference direction of a criterion.
enum class Direction { HigherBetter, LowerBetter };

std::string_view to_string(Direction d) noexcept;
std::optional<Direction> direction_from_string(std::string_view s) noexcept;

/// Expected operating range of a metric, in its native unit.
struct Bounds {
  double min = 0.0;
  double max = 0.0;

  bool degenerate() const noexcept { return min == max; }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// One decision criterion.
///
/// Weights are relative: only ratios matter, so they need not sum to one.
/// A metric without bounds is normalized against the range observed across
/// the scenario's tiers.
struct MetricDef {
  std::string id;
  Direction direction = Direction::HigherBetter;
  std::optional<Bounds> bounds;
  double weight = 0.0;
  std::string units;
  bool optional = false;

  friend bool operator==(const MetricDef&, const MetricDef&) = default;
};

/// One candidate compute tier: raw values for the metrics it reports.
struct TierProfile {
  std::string id;
  std::map<std::string, double> values;
  bool regulatory_ok = true;
  std::string label;

  bool reports(std::string_view metric_id) const;
  std::optional<double> value(std::string_view metric_id) const;

  friend bool operator==(const TierProfile&, const TierProfile&) = default;
};

enum class MissingMetricPolicy { Strict, Lenient };

std::string_view to_string(MissingMetricPolicy p) noexcept;
std::optional<MissingMetricPolicy> policy_from_string(std::string_view s) noexcept;

/// Metric ids the four hard thresholds are checked against.
namespace metric_ids {
inline constexpr std::string_view kLatencyP99 = "latency_p99";
inline constexpr std::string_view kSuccessProb = "success_prob";
inline constexpr std::string_view kQuality = "quality";
inline constexpr std::string_view kCostPerTask = "cost_per_task";
}  // namespace metric_ids

/// Hard task requirements. Absent thresholds are not checked.
struct Requirements {
  std::optional<double> max_latency_ms;
  std::optional<double> min_success;
  std::optional<double> min_quality;
  std::optional<double> max_cost;
  MissingMetricPolicy missing_metric_policy = MissingMetricPolicy::Strict;

  friend bool operator==(const Requirements&, const Requirements&) = default;
};

/// The unit of evaluation, serialization, and API exchange.
struct Scenario {
  std::string name;
  std::string description;
  std::vector<MetricDef> metrics;
  std::vector<TierProfile> tiers;
  Requirements requirements;
  double lambda = 0.2;

  const MetricDef* find_metric(std::string_view id) const;
  const TierProfile* find_tier(std::string_view id) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Which hard constraint a violation refers to.
enum class Constraint { Latency, Success, Quality, Cost, Regulatory };

std::string_view to_string(Constraint c) noexcept;
std::optional<Constraint> constraint_from_string(std::string_view s) noexcept;

/// Exceeded: observed value is on the wrong side of the threshold.
/// Unverifiable: threshold present, metric not reported by the tier.
/// Prohibited: regulatory flag is false.
enum class ViolationKind { Exceeded, Unverifiable, Prohibited };

std::string_view to_string(ViolationKind k) noexcept;
std::optional<ViolationKind> violation_kind_from_string(std::string_view s) noexcept;

struct Violation {
  Constraint constraint = Constraint::Latency;
  ViolationKind kind = ViolationKind::Exceeded;
  std::string metric_id;  // empty for Regulatory
  std::optional<double> threshold;
  std::optional<double> observed;

  /// e.g. "latency 600 > 250", "latency unverifiable", "regulatory".
  std::string describe() const;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Effective utility of a tier, or the infeasible sentinel.
///
/// The sentinel orders below every finite value and carries no number, so
/// arithmetic on utilities never sees an infinity.
class EffectiveUtility {
 public:
  static constexpr EffectiveUtility infeasible() noexcept { return EffectiveUtility{}; }
  static constexpr EffectiveUtility of(double v) noexcept { return EffectiveUtility{v}; }

  constexpr bool is_infeasible() const noexcept { return !value_.has_value(); }
  constexpr std::optional<double> get() const noexcept { return value_; }

  /// Throws std::logic_error on the sentinel.
  double value() const;

  friend bool operator==(const EffectiveUtility&, const EffectiveUtility&) = default;
  friend std::partial_ordering operator<=>(const EffectiveUtility& a,
                                           const EffectiveUtility& b) noexcept;

 private:
  constexpr EffectiveUtility() = default;
  constexpr explicit EffectiveUtility(double v) : value_(v) {}
  std::optional<double> value_;
};

enum class BoundsProvenance { Declared, DataDerived, Degenerate };

std::string_view to_string(BoundsProvenance p) noexcept;
std::optional<BoundsProvenance> provenance_from_string(std::string_view s) noexcept;

struct ResolvedBound {
  Bounds bounds;
  BoundsProvenance provenance = BoundsProvenance::Declared;

  friend bool operator==(const ResolvedBound&, const ResolvedBound&) = default;
};

/// Bounds actually used for normalization, keyed by metric id.
using ResolvedBounds = std::map<std::string, ResolvedBound, std::less<>>;

struct TierReport {
  std::string tier_id;
  std::map<std::string, double> scores;  // s_i(j), feasible tiers only
  std::optional<double> u_base;          // absent when infeasible or W_known = 0
  bool u_base_imputed = false;           // feasible, W_known = 0: ranked with u_base = 0
  double phi = 0.0;
  EffectiveUtility u_eff = EffectiveUtility::infeasible();
  bool feasible = false;
  std::vector<Violation> violations;
  std::vector<Violation> warnings;  // unverifiable thresholds under Lenient policy

  friend bool operator==(const TierReport&, const TierReport&) = default;
};

struct EvaluationResult {
  std::string scenario_name;
  double lambda = 0.0;
  ResolvedBounds bounds;
  std::vector<TierReport> per_tier;  // scenario declaration order
  std::vector<std::string> ranking;  // feasible tiers, best first
  std::optional<std::string> winner;
  std::vector<std::vector<std::string>> ties;

  const TierReport* find(std::string_view tier_id) const;

  friend bool operator==(const EvaluationResult&, const EvaluationResult&) = default;
};

struct ValidationIssue {
  std::string field;  // e.g. "metrics[2].weight"
  std::string rule;   // e.g. "non-negative"
  std::string message;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

/// Thrown when an operation requires a valid scenario and gets an invalid one.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

/// Checks every type invariant. Never throws; an empty list means valid.
std::vector<ValidationIssue> validate_scenario(const Scenario& s);

/// Throws ValidationError if validate_scenario reports anything.
void require_valid(const Scenario& s);

}  // namespace tierselect
