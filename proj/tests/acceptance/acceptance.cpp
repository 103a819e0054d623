// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "reference_tables.hpp"
#include "tierselect/analysis.hpp"
#include "tierselect/scenario_io.hpp"
#include "tierselect/scoring.hpp"

namespace ts = tierselect;

namespace {

// Collects failure notes for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++failed;
  }
  int failed = 0;
};

using Clock = std::chrono::steady_clock;

bool report(const std::string& name, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    std::ostringstream msg;
    msg << "took " << secs << " s (limit " << limit_s << " s)";
    c.expect(false, msg.str());
  }
  const bool pass = c.failed == 0;
  std::cout << (pass ? "PASS " : "FAIL ") << name << " [" << secs << " s]";
  if (!pass) {
    std::cout << " - " << c.failed << " failed check(s):";
    for (const auto& f : c.failures) std::cout << " {" << f << "}";
  }
  std::cout << '\n';
  return pass;
}

std::string str(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

bool has_violation(const ts::TierReport& t, ts::Constraint c) {
  return std::any_of(t.violations.begin(), t.violations.end(),
                     [c](const ts::Violation& v) { return v.constraint == c; });
}

void ids_verdicts(Check& c) {
  const ts::Scenario s = ts::load_scenario_file(ts::testing::ids_path());
  const ts::EvaluationResult r = ts::evaluate(s);
  c.expect(r.winner == "ODC", "winner " + r.winner.value_or("none"));
  const auto* fc = r.find("FC");
  const auto* odc = r.find("ODC");
  const auto* gse = r.find("GSE");
  const auto* tdc = r.find("TDC");
  c.expect(fc && fc->feasible && odc && odc->feasible, "FC and ODC feasible");
  if (fc && odc && fc->feasible && odc->feasible) {
    c.expect(odc->u_eff > fc->u_eff, "U_eff(ODC) > U_eff(FC)");
    c.expect(std::abs(odc->u_eff.value() - 0.515) < 5e-4, "ODC ~0.515, got " + str(odc->u_eff.value()));
    c.expect(std::abs(fc->u_eff.value() - 0.495) < 5e-4, "FC ~0.495, got " + str(fc->u_eff.value()));
  }
  c.expect(gse && !gse->feasible && has_violation(*gse, ts::Constraint::Latency), "GSE infeasible on latency");
  c.expect(tdc && !tdc->feasible && has_violation(*tdc, ts::Constraint::Latency), "TDC infeasible on latency");
  c.expect(r.ranking.size() == 2, "ranking holds only feasible tiers");
}

void suncatcher_ordering(Check& c) {
  const ts::Scenario s = ts::load_scenario_file(ts::testing::suncatcher_path());
  const ts::EvaluationResult r = ts::evaluate(s);
  const std::vector<std::string> expected{"GROUND_TPU_DC", "LEO_TPU_CLUSTER", "HYBRID_SPLIT"};
  c.expect(r.ranking == expected, "ranking GROUND_TPU_DC > LEO_TPU_CLUSTER > HYBRID_SPLIT");
  c.expect(r.winner == "GROUND_TPU_DC", "winner " + r.winner.value_or("none"));
  const auto* gpu = r.find("GROUND_GPU_DC");
  c.expect(gpu && !gpu->feasible && has_violation(*gpu, ts::Constraint::Cost), "GROUND_GPU_DC infeasible on cost");
  const std::vector<std::pair<std::string, double>> published{
      {"GROUND_TPU_DC", 0.784}, {"LEO_TPU_CLUSTER", 0.675}, {"HYBRID_SPLIT", 0.352}};
  for (const auto& [id, u] : published) {
    const auto* t = r.find(id);
    c.expect(t && t->feasible && std::abs(t->u_eff.value() - u) < 5e-4,
             id + " ~" + str(u) + ", got " + (t && t->feasible ? str(t->u_eff.value()) : "infeasible"));
  }
}

void oracle_equivalence(Check& c) {
  ts::testing::ScenarioGenerator g(1001);
  for (int i = 0; i < 1000; ++i) {
    const ts::Scenario s = g.next();
    const ts::EvaluationResult r = ts::evaluate(s);
    const auto o = ts::testing::oracle_evaluate(s);
    c.expect(r.winner == o.winner, s.name + " winner");
    for (std::size_t j = 0; j < s.tiers.size(); ++j) {
      const auto& a = r.per_tier[j];
      const auto& b = o.tiers[j];
      c.expect(a.feasible == b.feasible, s.name + " feasibility of " + a.tier_id);
      c.expect(std::abs(a.phi - b.phi) <= 1e-12, s.name + " phi of " + a.tier_id);
      c.expect(a.u_base.has_value() == b.u_base.has_value(), s.name + " u_base presence of " + a.tier_id);
      if (a.u_base && b.u_base) c.expect(std::abs(*a.u_base - *b.u_base) <= 1e-12, s.name + " u_base");
      if (a.feasible && b.u_eff) c.expect(std::abs(a.u_eff.value() - *b.u_eff) <= 1e-12, s.name + " u_eff");
      // Scores are reported for feasible tiers only.
      if (!a.feasible) {
        c.expect(a.scores.empty(), s.name + " infeasible tier carries scores");
        continue;
      }
      std::size_t expected = 0;
      for (std::size_t k = 0; k < s.metrics.size(); ++k) {
        if (!b.scores[k]) continue;
        ++expected;
        const std::string& m = s.metrics[k].id;
        auto it = a.scores.find(m);
        c.expect(it != a.scores.end() && std::abs(it->second - *b.scores[k]) <= 1e-12, s.name + " score " + m);
      }
      c.expect(a.scores.size() == expected, s.name + " score count of " + a.tier_id);
    }
  }
}

void properties(Check& c) {
  constexpr int kCases = 250;
  // Normalized scores stay in [0,1] and directions mirror each other.
  ts::testing::ScenarioGenerator g(2001);
  for (int i = 0; i < kCases; ++i) {
    const double a = g.uniform(-100, 100), b = g.chance(0.1) ? a : g.uniform(-100, 100);
    const ts::Bounds bd{std::min(a, b), std::max(a, b)};
    const double raw = g.uniform(-300, 300);
    const double hb = ts::normalize_metric(raw, ts::Direction::HigherBetter, bd);
    const double lb = ts::normalize_metric(raw, ts::Direction::LowerBetter, bd);
    c.expect(hb >= 0 && hb <= 1 && lb >= 0 && lb <= 1, "score outside [0,1]");
    if (!bd.degenerate()) c.expect(std::abs(hb + lb - 1.0) <= 1e-12, "direction symmetry");
  }
  // Improving a metric never lowers U_eff (fixed bounds, consistent thresholds).
  ts::testing::GeneratorOptions mono;
  mono.declared_bounds_only = true;
  mono.registry_directions = true;
  ts::testing::ScenarioGenerator gm(2002, mono);
  int checked = 0;
  for (int i = 0; checked < kCases && i < 100 * kCases; ++i) {
    ts::Scenario s = gm.next();
    const auto before = ts::evaluate(s);
    const auto j = static_cast<std::size_t>(gm.integer(0, static_cast<int>(s.tiers.size()) - 1));
    if (!before.per_tier[j].feasible || s.tiers[j].values.empty()) continue;
    auto it = s.tiers[j].values.begin();
    std::advance(it, gm.integer(0, static_cast<int>(s.tiers[j].values.size()) - 1));
    const double step = gm.uniform(0.0, 10.0);
    it->second += s.find_metric(it->first)->direction == ts::Direction::HigherBetter ? step : -step;
    const auto after = ts::evaluate(s);
    c.expect(after.per_tier[j].feasible && after.per_tier[j].u_eff >= before.per_tier[j].u_eff, "monotonicity");
    ++checked;
  }
  c.expect(checked == kCases, "monotonicity cases " + std::to_string(checked));
  // Uniform weight scaling leaves every utility unchanged; lambda = 0 or
  // full information removes the penalty; infeasible tiers never win.
  ts::testing::ScenarioGenerator gs(2003);
  for (int i = 0; i < kCases; ++i) {
    ts::Scenario s = gs.next();
    const auto base = ts::evaluate(s);
    ts::Scenario scaled = s;
    const double k = std::ldexp(1.0, gs.integer(-6, 6));
    for (auto& m : scaled.metrics) m.weight *= k;
    c.expect(ts::evaluate(scaled).per_tier == base.per_tier, "weight scaling");
    if (base.winner) c.expect(base.find(*base.winner)->feasible, "infeasible winner");
    for (const auto& t : base.per_tier) {
      c.expect(t.feasible == t.violations.empty(), "feasible iff no violations");
      if (t.feasible && t.phi == 1.0) c.expect(t.u_eff.value() == *t.u_base, "full information penalty");
    }
    s.lambda = 0.0;
    for (const auto& t : ts::evaluate(s).per_tier) {
      if (t.feasible) c.expect(t.u_eff.value() == t.u_base.value_or(0.0), "zero lambda penalty");
    }
  }
  // Penalty is non-increasing in phi and non-increasing in lambda.
  for (int i = 0; i < kCases; ++i) {
    const double u = g.uniform(0, 1), p1 = g.uniform(0, 1), p2 = g.uniform(0, 1), l1 = g.uniform(0, 1),
                 l2 = g.uniform(0, 1);
    c.expect(ts::effective_utility(u, std::max(p1, p2), l1) >= ts::effective_utility(u, std::min(p1, p2), l1),
             "penalty vs phi");
    c.expect(ts::effective_utility(u, p1, std::min(l1, l2)) >= ts::effective_utility(u, p1, std::max(l1, l2)),
             "penalty vs lambda");
  }
}

void pareto_consistency(Check& c) {
  const ts::Scenario ids = ts::load_scenario_file(ts::testing::ids_path());
  const auto front = ts::pareto_front(ids, {"latency_p99", "cost_per_task"});
  auto sorted = front.nondominated;
  std::sort(sorted.begin(), sorted.end());
  c.expect(sorted == std::vector<std::string>{"FC", "ODC"}, "IDS latency/cost front is {FC, ODC}");

  ts::testing::ScenarioGenerator g(3001);
  for (int i = 0; i < 300; ++i) {
    const ts::Scenario s = g.next();
    std::vector<std::string> objectives;
    std::vector<const ts::MetricDef*> defs;
    for (const auto& m : s.metrics) {
      objectives.push_back(m.id);
      defs.push_back(&m);
    }
    const auto r = ts::pareto_front(s, objectives);
    for (const auto& a : r.nondominated) {
      c.expect(!ts::dominates(*s.find_tier(a), *s.find_tier(a), defs), "irreflexive");
      for (const auto& b : r.nondominated) {
        c.expect(!ts::dominates(*s.find_tier(a), *s.find_tier(b), defs), s.name + " front member dominated");
      }
    }
    for (const auto& [loser, witness] : r.dominated) {
      c.expect(ts::dominates(*s.find_tier(witness), *s.find_tier(loser), defs), s.name + " witness");
    }
    const auto e = ts::evaluate(s);
    std::size_t feasible = 0;
    for (const auto& t : e.per_tier) feasible += t.feasible;
    c.expect(r.nondominated.size() + r.dominated.size() + r.excluded.size() == feasible, s.name + " partition");
  }
}

int cli_json(const std::string& path, std::string& out) {
  std::ostringstream o, err;
  const std::vector<std::string> args{"evaluate", path, "--format", "json"};
  const int code = ts::cli::run(args, o, err);
  out = o.str();
  return code;
}

void round_trip(Check& c) {
  for (const auto& path : {ts::testing::ids_path(), ts::testing::suncatcher_path()}) {
    const ts::Scenario s = ts::load_scenario_file(path);
    const std::string text = ts::serialize_scenario(s);
    c.expect(ts::parse_scenario(text) == s, path.filename().string() + " round trip");
    c.expect(ts::serialize_scenario(ts::parse_scenario(text)) == text, path.filename().string() + " idempotent");
    std::string a, b;
    c.expect(cli_json(path.string(), a) == 0 && cli_json(path.string(), b) == 0, "cli exit code");
    c.expect(!a.empty() && a == b, path.filename().string() + " CLI JSON byte-stable");
    const auto result = ts::evaluate(s);
    c.expect(ts::parse_result_json(a).per_tier == result.per_tier, "result JSON round trip");
  }
  ts::testing::ScenarioGenerator g(4001);
  for (int i = 0; i < 200; ++i) {
    const ts::Scenario s = g.next();
    const std::string text = ts::serialize_scenario(s);
    c.expect(ts::parse_scenario(text) == s, s.name + " round trip");
    c.expect(ts::serialize_scenario(ts::parse_scenario(text)) == text, s.name + " idempotent");
  }
}

template <std::size_t N, std::size_t M, std::size_t W>
int check_fixture(Check& c, const ts::Scenario& s, const std::array<std::string_view, N>& tiers,
                  const std::array<ts::testing::TableRow<N>, M>& table,
                  const std::array<ts::testing::WeightRow, W>& weights) {
  int cells = 0;
  c.expect(s.tiers.size() == N, "tier count");
  for (std::size_t j = 0; j < N && j < s.tiers.size(); ++j) {
    c.expect(s.tiers[j].id == tiers[j], "tier order " + std::string(tiers[j]));
    c.expect(s.tiers[j].values.size() == M, std::string(tiers[j]) + " metric count");
    for (const auto& row : table) {
      const auto v = s.tiers[j].value(row.metric);
      c.expect(v && *v == row.values[j], std::string(tiers[j]) + "." + std::string(row.metric));
      ++cells;
    }
  }
  for (const auto& w : weights) {
    const auto* m = s.find_metric(w.metric);
    c.expect(m && m->weight == w.weight, "weight " + std::string(w.metric));
  }
  return cells;
}

void fixture_fidelity(Check& c) {
  const int ids = check_fixture(c, ts::load_scenario_file(ts::testing::ids_path()), ts::testing::kIdsTiers,
                                ts::testing::kIdsTable, ts::testing::kIdsWeights);
  const int sun = check_fixture(c, ts::load_scenario_file(ts::testing::suncatcher_path()),
                                ts::testing::kSuncatcherTiers, ts::testing::kSuncatcherTable,
                                ts::testing::kSuncatcherWeights);
  c.expect(ids == 32, "IDS cells checked " + std::to_string(ids));
  c.expect(sun == 60, "Suncatcher cells checked " + std::to_string(sun));
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report("ids-verdicts: ODC wins over FC, GSE and TDC infeasible on latency", 1.0, ids_verdicts);
  ok &= report("suncatcher-ordering: GROUND_TPU_DC > LEO_TPU_CLUSTER > HYBRID_SPLIT, GPU infeasible on cost", 1.0,
               suncatcher_ordering);
  ok &= report("oracle-equivalence: 1000 generated scenarios within 1e-12", 10.0, oracle_equivalence);
  ok &= report("scoring-properties: >=250 cases per property", 0, properties);
  ok &= report("pareto-consistency: fronts are nondominated with valid witnesses", 0, pareto_consistency);
  ok &= report("round-trip: fixtures and 200 generated scenarios, CLI JSON byte-stable", 0, round_trip);
  ok &= report("fixture-fidelity: 32 IDS and 60 Suncatcher cells plus weights", 0, fixture_fidelity);
  std::cout << (ok ? "ALL PASS" : "SOME FAILED") << '\n';
  return ok ? 0 : 1;
}
