#include "tierselect/scoring.hpp"

#include <algorithm>
#include <tuple>

namespace tierselect {

ResolvedBounds resolve_bounds(const Scenario& s) {
  ResolvedBounds out;
  for (const MetricDef& m : s.metrics) {
    if (m.bounds) {
      out.emplace(m.id, ResolvedBound{*m.bounds, BoundsProvenance::Declared});
      continue;
    }
    std::optional<Bounds> observed;
    for (const TierProfile& t : s.tiers) {
      auto v = t.value(m.id);
      if (!v) continue;
      if (!observed) {
        observed = Bounds{*v, *v};
      } else {
        observed->min = std::min(observed->min, *v);
        observed->max = std::max(observed->max, *v);
      }
    }
    if (observed) {
      auto prov = observed->degenerate() ? BoundsProvenance::Degenerate : BoundsProvenance::DataDerived;
      out.emplace(m.id, ResolvedBound{*observed, prov});
    }
  }
  return out;
}

double normalize_metric(double raw, Direction direction, const Bounds& bounds) noexcept {
  if (bounds.degenerate()) return 0.5;
  const double span = bounds.max - bounds.min;
  const double s = direction == Direction::HigherBetter ? (raw - bounds.min) / span
                                                        : (bounds.max - raw) / span;
  return std::min(1.0, std::max(0.0, s));
}

namespace {

// Accumulates the weighted score sum over the tier's known weighted metrics.
struct KnownSums {
  double weighted_scores = 0.0;
  double known_weight = 0.0;
};

KnownSums known_sums(const TierProfile& tier, std::span<const MetricDef> defs,
                     const ResolvedBounds& bounds, std::map<std::string, double>* scores) {
  KnownSums sums;
  for (const MetricDef& m : defs) {
    auto raw = tier.value(m.id);
    if (!raw) continue;
    auto b = bounds.find(m.id);
    // resolve_bounds gives every reported metric an entry
    if (b == bounds.end()) continue;
    const double s = normalize_metric(*raw, m.direction, b->second.bounds);
    if (scores) (*scores)[m.id] = s;
    if (m.weight <= 0.0) continue;
    sums.weighted_scores += m.weight * s;
    sums.known_weight += m.weight;
  }
  return sums;
}

}  // namespace

std::optional<double> base_utility(const TierProfile& tier, std::span<const MetricDef> defs,
                                   const ResolvedBounds& bounds) {
  const KnownSums sums = known_sums(tier, defs, bounds, nullptr);
  if (sums.known_weight <= 0.0) return std::nullopt;
  return sums.weighted_scores / sums.known_weight;
}

double information_fraction(const TierProfile& tier, std::span<const MetricDef> defs) noexcept {
  double known = 0.0;
  double total = 0.0;
  for (const MetricDef& m : defs) {
    if (m.weight <= 0.0) continue;
    total += m.weight;
    if (tier.reports(m.id)) known += m.weight;
  }
  return total > 0.0 ? known / total : 0.0;
}

namespace {

enum class Side { AtMost, AtLeast };

void check_threshold(const TierProfile& tier, const std::optional<double>& threshold,
                     std::string_view metric_id, Constraint constraint, Side side,
                     MissingMetricPolicy policy, FeasibilityVerdict& verdict) {
  if (!threshold) return;
  auto observed = tier.value(metric_id);
  if (!observed) {
    Violation v{constraint, ViolationKind::Unverifiable, std::string(metric_id), threshold, std::nullopt};
    if (policy == MissingMetricPolicy::Strict) {
      verdict.violations.push_back(std::move(v));
    } else {
      verdict.warnings.push_back(std::move(v));
    }
    return;
  }
  const bool violated = side == Side::AtMost ? *observed > *threshold : *observed < *threshold;
  if (violated) {
    verdict.violations.push_back(
        Violation{constraint, ViolationKind::Exceeded, std::string(metric_id), threshold, observed});
  }
}

}  // namespace

FeasibilityVerdict check_feasibility(const TierProfile& tier, const Requirements& req) {
  FeasibilityVerdict verdict;
  const auto policy = req.missing_metric_policy;
  check_threshold(tier, req.max_latency_ms, metric_ids::kLatencyP99, Constraint::Latency, Side::AtMost,
                  policy, verdict);
  check_threshold(tier, req.min_success, metric_ids::kSuccessProb, Constraint::Success, Side::AtLeast,
                  policy, verdict);
  check_threshold(tier, req.min_quality, metric_ids::kQuality, Constraint::Quality, Side::AtLeast,
                  policy, verdict);
  check_threshold(tier, req.max_cost, metric_ids::kCostPerTask, Constraint::Cost, Side::AtMost, policy,
                  verdict);
  if (!tier.regulatory_ok) {
    verdict.violations.push_back(
        Violation{Constraint::Regulatory, ViolationKind::Prohibited, {}, std::nullopt, std::nullopt});
  }
  verdict.feasible = verdict.violations.empty();
  return verdict;
}

EvaluationResult evaluate(const Scenario& s) {
  require_valid(s);

  EvaluationResult result;
  result.scenario_name = s.name;
  result.lambda = s.lambda;
  result.bounds = resolve_bounds(s);
  result.per_tier.reserve(s.tiers.size());

  for (const TierProfile& tier : s.tiers) {
    TierReport report;
    report.tier_id = tier.id;
    report.phi = information_fraction(tier, s.metrics);

    FeasibilityVerdict verdict = check_feasibility(tier, s.requirements);
    report.feasible = verdict.feasible;
    report.violations = std::move(verdict.violations);
    report.warnings = std::move(verdict.warnings);

    if (report.feasible) {
      const KnownSums sums = known_sums(tier, s.metrics, result.bounds, &report.scores);
      double u_base = 0.0;
      if (sums.known_weight > 0.0) {
        u_base = sums.weighted_scores / sums.known_weight;
        report.u_base = u_base;
      } else {
        report.u_base_imputed = true;
      }
      report.u_eff = EffectiveUtility::of(effective_utility(u_base, report.phi, s.lambda));
    }
    result.per_tier.push_back(std::move(report));
  }

  std::vector<const TierReport*> feasible;
  for (const TierReport& r : result.per_tier) {
    if (r.feasible) feasible.push_back(&r);
  }
  auto rank_key = [](const TierReport* r) {
    return std::make_tuple(r->u_eff.value(), r->u_base.value_or(0.0), r->phi);
  };
  std::stable_sort(feasible.begin(), feasible.end(), [&](const TierReport* a, const TierReport* b) {
    const auto ka = rank_key(a);
    const auto kb = rank_key(b);
    if (ka != kb) return ka > kb;
    return a->tier_id < b->tier_id;
  });

  for (const TierReport* r : feasible) result.ranking.push_back(r->tier_id);
  if (!feasible.empty()) result.winner = feasible.front()->tier_id;

  // Groups of equal u_eff are contiguous in the ranking.
  for (std::size_t i = 0; i < feasible.size();) {
    std::size_t j = i + 1;
    while (j < feasible.size() && feasible[j]->u_eff == feasible[i]->u_eff) ++j;
    if (j - i > 1) {
      std::vector<std::string> group;
      for (std::size_t k = i; k < j; ++k) group.push_back(feasible[k]->tier_id);
      result.ties.push_back(std::move(group));
    }
    i = j;
  }
  return result;
}

}  // namespace tierselect
