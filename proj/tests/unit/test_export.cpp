#include <gtest/gtest.h>

#include <sstream>

#include "reference_tables.hpp"
#include "tierselect/scenario_io.hpp"
#include "tierselect/scoring.hpp"

namespace tierselect {
namespace {

EvaluationResult ids_result() { return evaluate(load_scenario_file(testing::ids_path())); }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

bool has_line_containing(const std::vector<std::string>& ls, std::initializer_list<std::string_view> parts) {
  for (const auto& l : ls) {
    bool all = true;
    for (auto p : parts) all = all && l.find(p) != std::string::npos;
    if (all) return true;
  }
  return false;
}

TEST(ExportFormat, Parses) {
  EXPECT_EQ(export_format_from_string("json"), ExportFormat::Json);
  EXPECT_EQ(export_format_from_string("csv"), ExportFormat::Csv);
  EXPECT_EQ(export_format_from_string("table"), ExportFormat::Table);
  EXPECT_FALSE(export_format_from_string("xml"));
}

TEST(ExportTable, IdsRanking) {
  const auto ls = lines(export_result(ids_result(), ExportFormat::Table));
  ASSERT_FALSE(ls.empty());
  EXPECT_NE(ls[0].find("ids"), std::string::npos);
  EXPECT_TRUE(has_line_containing(ls, {"ODC", "*", "Yes", "0.515"}));
  EXPECT_TRUE(has_line_containing(ls, {"FC", "Yes", "0.495"}));
  EXPECT_TRUE(has_line_containing(ls, {"GSE", "No (latency"}));
  EXPECT_TRUE(has_line_containing(ls, {"TDC", "No (latency"}));
  EXPECT_TRUE(has_line_containing(ls, {"Winner: ODC"}));
  for (const auto& l : ls) EXPECT_TRUE(l.empty() || l.back() != ' ') << '"' << l << '"';
}

TEST(ExportTable, NoFeasibleTier) {
  Scenario s = load_scenario_file(testing::ids_path());
  s.requirements.max_latency_ms = 1.0;
  const std::string t = export_result(evaluate(s), ExportFormat::Table);
  EXPECT_NE(t.find("Winner: none"), std::string::npos);
}

TEST(ExportCsv, OneRowPerScore) {
  const EvaluationResult r = ids_result();
  const auto ls = lines(export_result(r, ExportFormat::Csv));
  ASSERT_FALSE(ls.empty());
  EXPECT_EQ(ls[0], "tier,metric,score");
  std::size_t scores = 0;
  for (const auto& t : r.per_tier) scores += t.scores.size();
  EXPECT_EQ(ls.size(), scores + 1);
  EXPECT_EQ(scores, 16u);  // two feasible tiers times eight metrics
}

TEST(ExportCsv, NoFeasibleTierIsHeaderOnly) {
  Scenario s = load_scenario_file(testing::ids_path());
  s.requirements.max_latency_ms = 1.0;
  EXPECT_EQ(export_result(evaluate(s), ExportFormat::Csv), "tier,metric,score\n");
}

TEST(ExportJson, ReparsesToSameResult) {
  for (const auto& path : {testing::ids_path(), testing::suncatcher_path()}) {
    const EvaluationResult r = evaluate(load_scenario_file(path));
    const std::string text = export_result(r, ExportFormat::Json);
    const EvaluationResult back = parse_result_json(text);
    EXPECT_EQ(back.per_tier, r.per_tier);
    EXPECT_EQ(back.ranking, r.ranking);
    EXPECT_EQ(back.winner, r.winner);
    EXPECT_EQ(back.ties, r.ties);
    EXPECT_EQ(back.bounds, r.bounds);
    EXPECT_EQ(export_result(back, ExportFormat::Json), text);
  }
}

TEST(ExportJson, CarriesVersionAndViolations) {
  const std::string text = export_result(ids_result(), ExportFormat::Json);
  EXPECT_NE(text.find("\"engine_version\""), std::string::npos);
  EXPECT_NE(text.find("latency 600 > 250"), std::string::npos);
  EXPECT_NE(text.find("\"winner\": \"ODC\""), std::string::npos);
}

}  // namespace
}  // namespace tierselect
