#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tierselect/model.hpp"

namespace tierselect {

/// Bounds used for normalization. Declared bounds pass through unchanged;
/// otherwise the min/max of the raw values over every tier that reports the
/// metric is used, flagged Degenerate when those values are all identical.
/// Metrics with neither declared bounds nor any reported value get no entry.
ResolvedBounds resolve_bounds(const Scenario& s);

/// Maps a raw value onto [0, 1] with 1 at the preferred end of `bounds`.
/// Out-of-range values clip; degenerate bounds (min == max) score 0.5.
double normalize_metric(double raw, Direction direction, const Bounds& bounds) noexcept;

inline double normalize_metric(double raw, const MetricDef& def, const Bounds& bounds) noexcept {
  return normalize_metric(raw, def.direction, bounds);
}

/// Weighted mean of the normalized scores over the metrics `tier` reports
/// with positive weight. Absent when no such metric exists.
std::optional<double> base_utility(const TierProfile& tier, std::span<const MetricDef> defs,
                                   const ResolvedBounds& bounds);

/// Share of the total positive weight that `tier` reports. Zero-weight
/// metrics count toward neither sum. Returns 0 when the total weight is 0.
double information_fraction(const TierProfile& tier, std::span<const MetricDef> defs) noexcept;

/// u_base - lambda * (1 - phi).
constexpr double effective_utility(double u_base, double phi, double lambda) noexcept {
  return u_base - lambda * (1.0 - phi);
}

struct FeasibilityVerdict {
  bool feasible = true;
  std::vector<Violation> violations;
  std::vector<Violation> warnings;
};

/// Applies the hard constraints. Every violated constraint is reported.
/// A present threshold whose metric the tier does not report is a violation
/// under Strict policy and a warning under Lenient.
FeasibilityVerdict check_feasibility(const TierProfile& tier, const Requirements& req);

/// Full evaluation: feasibility gate, then normalization and utilities for
/// feasible tiers, then selection of the feasible tier with the largest
/// effective utility. Ties on u_eff are broken by higher u_base, then higher
/// phi, then the lexicographically smallest tier id.
///
/// Throws ValidationError if the scenario is invalid.
EvaluationResult evaluate(const Scenario& s);

}  // namespace tierselect
