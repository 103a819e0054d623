#include "tierselect/analysis.hpp"

#include <cmath>
#include <set>

#include "tierselect/scoring.hpp"

namespace tierselect {

namespace {

constexpr std::string_view kWeightPrefix = "weight:";
constexpr std::string_view kThresholdPrefix = "threshold:";

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::optional<double>& threshold_slot(Requirements& r, ThresholdKind k) {
  switch (k) {
    case ThresholdKind::MaxLatency:
      return r.max_latency_ms;
    case ThresholdKind::MinSuccess:
      return r.min_success;
    case ThresholdKind::MinQuality:
      return r.min_quality;
    case ThresholdKind::MaxCost:
      break;
  }
  return r.max_cost;
}

}  // namespace

std::string_view to_string(ThresholdKind k) noexcept {
  switch (k) {
    case ThresholdKind::MaxLatency:
      return "max_latency_ms";
    case ThresholdKind::MinSuccess:
      return "min_success";
    case ThresholdKind::MinQuality:
      return "min_quality";
    case ThresholdKind::MaxCost:
      break;
  }
  return "max_cost";
}

std::optional<ThresholdKind> threshold_from_string(std::string_view s) noexcept {
  for (auto k : {ThresholdKind::MaxLatency, ThresholdKind::MinSuccess, ThresholdKind::MinQuality,
                 ThresholdKind::MaxCost}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

SweepParameter parse_sweep_parameter(std::string_view text) {
  if (text == "lambda") return sweep_param::Lambda{};
  if (text.starts_with(kWeightPrefix)) {
    auto id = text.substr(kWeightPrefix.size());
    if (id.empty()) throw AnalysisError("sweep parameter 'weight:' needs a metric id");
    return sweep_param::MetricWeight{std::string(id)};
  }
  if (text.starts_with(kThresholdPrefix)) {
    auto which = threshold_from_string(text.substr(kThresholdPrefix.size()));
    if (!which) {
      throw AnalysisError("unknown threshold in sweep parameter '" + std::string(text) +
                          "' (expected max_latency_ms, min_success, min_quality, max_cost)");
    }
    return sweep_param::Threshold{*which};
  }
  throw AnalysisError("unknown sweep parameter '" + std::string(text) +
                      "' (expected lambda, weight:<metric>, threshold:<name>)");
}

std::string to_string(const SweepParameter& p) {
  return std::visit(overloaded{
                        [](const sweep_param::Lambda&) { return std::string("lambda"); },
                        [](const sweep_param::MetricWeight& w) { return std::string(kWeightPrefix) + w.metric_id; },
                        [](const sweep_param::Threshold& t) {
                          return std::string(kThresholdPrefix) + std::string(to_string(t.which));
                        },
                    },
                    p);
}

Scenario with_parameter(const Scenario& s, const SweepParameter& p, double value) {
  Scenario out = s;
  std::visit(overloaded{
                 [&](const sweep_param::Lambda&) { out.lambda = value; },
                 [&](const sweep_param::MetricWeight& w) {
                   for (MetricDef& m : out.metrics) {
                     if (m.id == w.metric_id) {
                       m.weight = value;
                       return;
                     }
                   }
                   throw AnalysisError("sweep over unknown metric '" + w.metric_id + "'");
                 },
                 [&](const sweep_param::Threshold& t) { threshold_slot(out.requirements, t.which) = value; },
             },
             p);
  return out;
}

SweepResult sweep(const Scenario& s, const SweepSpec& spec) {
  if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi) || !(spec.lo < spec.hi)) {
    throw AnalysisError("sweep range must satisfy lo < hi");
  }
  if (spec.steps < 2) throw AnalysisError("sweep needs at least 2 steps");
  if (const auto* w = std::get_if<sweep_param::MetricWeight>(&spec.parameter)) {
    if (!s.find_metric(w->metric_id)) throw AnalysisError("sweep over unknown metric '" + w->metric_id + "'");
  }

  SweepResult out;
  out.parameter = to_string(spec.parameter);
  out.rows.reserve(static_cast<std::size_t>(spec.steps));
  const double width = spec.hi - spec.lo;
  const int last = spec.steps - 1;
  for (int i = 0; i <= last; ++i) {
    const double value = i == last ? spec.hi : spec.lo + width * i / last;
    const EvaluationResult r = evaluate(with_parameter(s, spec.parameter, value));
    SweepRow row;
    row.value = value;
    row.winner = r.winner;
    for (const TierReport& t : r.per_tier) row.u_eff.emplace(t.tier_id, t.u_eff);
    if (!out.rows.empty() && out.rows.back().winner != row.winner) {
      row.crossover = true;
      out.crossovers.push_back(out.rows.size());
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

bool dominates(const TierProfile& a, const TierProfile& b, std::span<const MetricDef* const> objectives) {
  bool strictly = false;
  for (const MetricDef* m : objectives) {
    const double va = a.value(m->id).value();
    const double vb = b.value(m->id).value();
    const bool a_better = m->direction == Direction::HigherBetter ? va > vb : va < vb;
    const bool b_better = m->direction == Direction::HigherBetter ? vb > va : vb < va;
    if (b_better) return false;
    strictly = strictly || a_better;
  }
  return strictly;
}

ParetoResult pareto_front(const Scenario& s, const std::vector<std::string>& objectives) {
  if (objectives.empty()) throw AnalysisError("pareto analysis needs at least one objective");
  require_valid(s);

  ParetoResult out;
  out.objectives = objectives;
  std::vector<const MetricDef*> defs;
  std::set<std::string_view> seen;
  for (const std::string& id : objectives) {
    const MetricDef* m = s.find_metric(id);
    if (!m) throw AnalysisError("unknown pareto objective '" + id + "'");
    if (!seen.insert(id).second) throw AnalysisError("duplicate pareto objective '" + id + "'");
    defs.push_back(m);
  }

  std::vector<const TierProfile*> candidates;
  for (const TierProfile& t : s.tiers) {
    if (!check_feasibility(t, s.requirements).feasible) {
      out.infeasible.push_back(t.id);
      continue;
    }
    bool complete = true;
    for (const MetricDef* m : defs) complete = complete && t.reports(m->id);
    if (!complete) {
      out.excluded.push_back(t.id);
      continue;
    }
    candidates.push_back(&t);
  }

  for (const TierProfile* b : candidates) {
    const TierProfile* witness = nullptr;
    for (const TierProfile* a : candidates) {
      if (a != b && dominates(*a, *b, defs)) {
        witness = a;
        break;
      }
    }
    if (witness) {
      out.dominated.emplace(b->id, witness->id);
    } else {
      out.nondominated.push_back(b->id);
    }
  }
  return out;
}

const TierExplanation* Explanation::find(std::string_view tier_id) const {
  for (const TierExplanation& t : tiers) {
    if (t.tier_id == tier_id) return &t;
  }
  return nullptr;
}

Explanation explain(const EvaluationResult& result, const Scenario& s) {
  if (result.per_tier.size() != s.tiers.size() || result.lambda != s.lambda) {
    throw AnalysisError("evaluation result does not belong to scenario '" + s.name + "'");
  }
  for (std::size_t i = 0; i < s.tiers.size(); ++i) {
    if (result.per_tier[i].tier_id != s.tiers[i].id) {
      throw AnalysisError("evaluation result does not belong to scenario '" + s.name + "'");
    }
  }
  if (result.bounds != resolve_bounds(s)) {
    throw AnalysisError("evaluation result was computed with different normalization bounds");
  }

  Explanation out;
  out.scenario_name = s.name;
  out.lambda = s.lambda;
  out.winner = result.winner;
  for (std::size_t i = 0; i < s.tiers.size(); ++i) {
    const TierProfile& tier = s.tiers[i];
    const TierReport& report = result.per_tier[i];

    TierExplanation e;
    e.tier_id = tier.id;
    e.feasible = report.feasible;
    e.u_base = report.u_base;
    e.u_base_imputed = report.u_base_imputed;
    e.phi = report.phi;
    e.penalty = s.lambda * (1.0 - report.phi);
    e.u_eff = report.u_eff;
    e.violations = report.violations;
    e.warnings = report.warnings;

    for (const MetricDef& m : s.metrics) {
      if (m.weight > 0.0 && !tier.reports(m.id)) e.unreported.push_back(m.id);
    }

    if (report.feasible) {
      double known_weight = 0.0;
      for (const MetricDef& m : s.metrics) {
        if (m.weight > 0.0 && tier.reports(m.id)) known_weight += m.weight;
      }
      for (const MetricDef& m : s.metrics) {
        if (m.weight <= 0.0 || !tier.reports(m.id)) continue;
        ContributionRow row;
        row.metric_id = m.id;
        row.raw = *tier.value(m.id);
        row.bounds = result.bounds.at(m.id);
        row.score = report.scores.at(m.id);
        row.weight = m.weight;
        row.contribution = m.weight * row.score / known_weight;
        e.contributions.push_back(std::move(row));
      }
    }
    out.tiers.push_back(std::move(e));
  }
  return out;
}

}  // namespace tierselect
