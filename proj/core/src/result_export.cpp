#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "json_codec.hpp"
#include "number_format.hpp"
#include "tierselect/scenario_io.hpp"
#include "tierselect/version.hpp"

namespace tierselect {

using nlohmann::json;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string export_csv(const EvaluationResult& r) {
  std::string out = "tier,metric,score\n";
  for (const TierReport& t : r.per_tier) {
    for (const auto& [metric, score] : t.scores) {
      out += csv_field(t.tier_id);
      out += ',';
      out += csv_field(metric);
      out += ',';
      out += detail::format_number(score);
      out += '\n';
    }
  }
  return out;
}

std::string feasibility_label(const TierReport& t) {
  if (t.feasible) return "Yes";
  std::vector<std::string> reasons;
  for (const Violation& v : t.violations) {
    std::string reason(to_string(v.constraint));
    if (v.kind == ViolationKind::Unverifiable) reason += " unverifiable";
    if (std::find(reasons.begin(), reasons.end(), reason) == reasons.end()) reasons.push_back(reason);
  }
  std::string out = "No (";
  for (std::size_t i = 0; i < reasons.size(); ++i) {
    if (i) out += ", ";
    out += reasons[i];
  }
  return out + ")";
}

std::string export_table(const EvaluationResult& r) {
  struct Line {
    std::string mark, rank, tier, feasible, u_base, phi, u_eff;
  };
  std::vector<Line> lines;
  lines.push_back({"", "Rank", "Tier", "Feasible?", "U_base", "phi", "U_eff"});

  auto fmt = [](double v) { return detail::format_fixed(v, 3); };
  for (std::size_t i = 0; i < r.ranking.size(); ++i) {
    const TierReport& t = *r.find(r.ranking[i]);
    const bool winner = r.winner && *r.winner == t.tier_id;
    lines.push_back({winner ? "*" : "", std::to_string(i + 1), t.tier_id, feasibility_label(t),
                     t.u_base ? fmt(*t.u_base) : "--", fmt(t.phi), fmt(t.u_eff.value())});
  }
  for (const TierReport& t : r.per_tier) {
    if (t.feasible) continue;
    lines.push_back({"", "-", t.tier_id, feasibility_label(t), "--", fmt(t.phi), "-inf"});
  }

  std::array<std::size_t, 6> width{};
  for (const Line& l : lines) {
    const std::array<const std::string*, 6> cells{&l.rank, &l.tier, &l.feasible, &l.u_base, &l.phi, &l.u_eff};
    for (std::size_t c = 0; c < cells.size(); ++c) width[c] = std::max(width[c], cells[c]->size());
  }

  std::ostringstream out;
  out << "Scenario: " << r.scenario_name << "  (lambda = " << detail::format_number(r.lambda) << ")\n\n";
  for (const Line& l : lines) {
    const std::array<const std::string*, 6> cells{&l.rank, &l.tier, &l.feasible, &l.u_base, &l.phi, &l.u_eff};
    std::string row = l.mark.empty() ? "  " : l.mark + " ";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      row += *cells[c];
      if (c + 1 < cells.size()) row += std::string(width[c] - cells[c]->size() + 2, ' ');
    }
    out << row << '\n';
  }
  out << '\n';
  if (r.winner) {
    out << "Winner: " << *r.winner << '\n';
  } else {
    out << "Winner: none (no feasible tier)\n";
  }
  for (const auto& group : r.ties) {
    out << "Tie:";
    for (const auto& id : group) out << ' ' << id;
    out << '\n';
  }
  return out.str();
}

json row_bounds(const ResolvedBound& b) {
  return {{"min", b.bounds.min}, {"max", b.bounds.max}, {"provenance", to_string(b.provenance)}};
}

}  // namespace

std::optional<ExportFormat> export_format_from_string(std::string_view s) noexcept {
  if (s == "json") return ExportFormat::Json;
  if (s == "csv") return ExportFormat::Csv;
  if (s == "table") return ExportFormat::Table;
  return std::nullopt;
}

std::string export_result(const EvaluationResult& r, ExportFormat format) {
  switch (format) {
    case ExportFormat::Csv:
      return export_csv(r);
    case ExportFormat::Table:
      return export_table(r);
    case ExportFormat::Json:
      break;
  }
  return detail::result_to_json(r).dump(2) + "\n";
}

EvaluationResult parse_result_json(std::string_view text) {
  try {
    return detail::result_from_json(json::parse(text.begin(), text.end()));
  } catch (const json::exception& e) {
    throw ParseError({{ParseIssueKind::Schema, "/", e.what()}});
  }
}

std::string sweep_to_json(const SweepResult& r) {
  json rows = json::array();
  for (const SweepRow& row : r.rows) {
    json u = json::object();
    for (const auto& [id, v] : row.u_eff) u[id] = detail::utility_to_json(v);
    rows.push_back({
        {"value", row.value},
        {"winner", row.winner ? json(*row.winner) : json(nullptr)},
        {"u_eff", std::move(u)},
        {"crossover", row.crossover},
    });
  }
  json out = {
      {"engine_version", kEngineVersion},
      {"parameter", r.parameter},
      {"rows", std::move(rows)},
      {"crossovers", r.crossovers},
  };
  return out.dump(2) + "\n";
}

std::string pareto_to_json(const ParetoResult& r) {
  json out = {
      {"engine_version", kEngineVersion},
      {"objectives", r.objectives},
      {"nondominated", r.nondominated},
      {"dominated", r.dominated},
      {"excluded", r.excluded},
      {"infeasible", r.infeasible},
  };
  return out.dump(2) + "\n";
}

std::string explanation_to_json(const Explanation& e) {
  json tiers = json::array();
  for (const TierExplanation& t : e.tiers) {
    json contributions = json::array();
    for (const ContributionRow& c : t.contributions) {
      contributions.push_back({
          {"metric", c.metric_id},
          {"raw", c.raw},
          {"bounds", row_bounds(c.bounds)},
          {"score", c.score},
          {"weight", c.weight},
          {"contribution", c.contribution},
      });
    }
    json violations = json::array();
    for (const auto& v : t.violations) violations.push_back(detail::violation_to_json(v));
    json warnings = json::array();
    for (const auto& v : t.warnings) warnings.push_back(detail::violation_to_json(v));
    tiers.push_back({
        {"tier", t.tier_id},
        {"feasible", t.feasible},
        {"contributions", std::move(contributions)},
        {"unreported", t.unreported},
        {"u_base", t.u_base ? json(*t.u_base) : json(nullptr)},
        {"u_base_imputed", t.u_base_imputed},
        {"phi", t.phi},
        {"penalty", t.penalty},
        {"u_eff", detail::utility_to_json(t.u_eff)},
        {"violations", std::move(violations)},
        {"warnings", std::move(warnings)},
    });
  }
  json out = {
      {"engine_version", kEngineVersion},
      {"scenario", e.scenario_name},
      {"lambda", e.lambda},
      {"winner", e.winner ? json(*e.winner) : json(nullptr)},
      {"tiers", std::move(tiers)},
  };
  return out.dump(2) + "\n";
}

}  // namespace tierselect
