#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tierselect/analysis.hpp"
#include "tierselect/model.hpp"

namespace tierselect {

enum class ParseIssueKind { Syntax, Schema, Validation };

struct ParseIssue {
  ParseIssueKind kind = ParseIssueKind::Schema;
  std::string location;  // "line 3, column 7" for syntax, a JSON pointer or field path otherwise
  std::string message;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<ParseIssue> issues);
  const std::vector<ParseIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ParseIssue> issues_;
};

/// Parses a scenario document.
///
/// Top-level keys: name, description?, lambda, metrics, tiers, requirements.
/// Each metric is {id, direction?, weight, units?, min?, max?, optional?};
/// direction and units default from the standard registry for registry ids.
/// Each tier is {id, label?, regulatory_ok, values}. Requirements are
/// {max_latency_ms?, min_success?, min_quality?, max_cost?,
/// missing_metric_policy}. Unknown keys are rejected.
///
/// Throws ParseError listing every syntax, schema, and validation problem.
Scenario parse_scenario(std::string_view text);

/// Canonical form: object keys sorted, metrics and tiers in declaration
/// order, shortest round-trip reals, two-space indent, trailing newline.
std::string serialize_scenario(const Scenario& s);

/// Reads and parses a scenario file. Throws std::runtime_error naming the
/// path when the file cannot be read.
Scenario load_scenario_file(const std::filesystem::path& path);

enum class ExportFormat { Json, Csv, Table };

std::optional<ExportFormat> export_format_from_string(std::string_view s) noexcept;

/// JSON mirrors EvaluationResult (plus the engine version). CSV has one
/// `tier,metric,score` row per normalized score. Table is a ranking with a
/// feasibility column such as "No (latency)".
std::string export_result(const EvaluationResult& r, ExportFormat format);

/// Inverse of export_result(r, ExportFormat::Json).
EvaluationResult parse_result_json(std::string_view text);

std::string sweep_to_json(const SweepResult& r);
std::string pareto_to_json(const ParetoResult& r);
std::string explanation_to_json(const Explanation& e);

}  // namespace tierselect
