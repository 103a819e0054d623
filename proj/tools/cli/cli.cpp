#include "cli.hpp"

#include <csignal>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "tierselect/analysis.hpp"
#include "tierselect/scenario_io.hpp"
#include "tierselect/scoring.hpp"
#include "tierselect/service.hpp"
#include "tierselect/version.hpp"

namespace tierselect::cli {

namespace {

struct Options {
  std::string scenario_path;
  std::string format;
  std::string tier;
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  std::vector<std::string> objectives;
  int port = -1;
  std::string host = "0.0.0.0";
  std::string scenarios_dir;
  std::string static_dir;
  std::size_t max_body = 1 << 20;
};

std::string number(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string utility(const EffectiveUtility& u) { return u.is_infeasible() ? "-inf" : fixed(u.value()); }

void print_parse_error(const ParseError& e, const std::string& path, std::ostream& err) {
  err << path << ": invalid scenario\n";
  for (const ParseIssue& i : e.issues()) err << "  " << i.location << ": " << i.message << '\n';
}

// Loads the scenario or reports why not. Returns false on failure.
bool load(const std::string& path, Scenario& s, std::ostream& err) {
  try {
    s = load_scenario_file(path);
    return true;
  } catch (const ParseError& e) {
    print_parse_error(e, path, err);
  } catch (const std::exception& e) {
    err << e.what() << '\n';
  }
  return false;
}

int cmd_evaluate(const Options& o, std::ostream& out, std::ostream& err) {
  Scenario s;
  if (!load(o.scenario_path, s, err)) return kExitFailure;
  const EvaluationResult r = evaluate(s);
  out << export_result(r, *export_format_from_string(o.format));
  return r.winner ? kExitOk : kExitFailure;
}

void print_explanation(const TierExplanation& t, std::ostream& out) {
  out << "Tier " << t.tier_id << (t.feasible ? "  (feasible)" : "  (infeasible)") << '\n';
  if (!t.feasible) {
    for (const Violation& v : t.violations) out << "  violation: " << v.describe() << '\n';
    out << "  U_eff = -inf\n";
    return;
  }
  for (const Violation& v : t.warnings) out << "  warning: " << v.describe() << '\n';
  out << "  " << std::left << std::setw(18) << "metric" << std::setw(12) << "raw" << std::setw(12) << "min"
      << std::setw(12) << "max" << std::setw(14) << "bounds" << std::setw(8) << "score" << std::setw(8)
      << "weight"
      << "contribution\n";
  for (const ContributionRow& c : t.contributions) {
    out << "  " << std::setw(18) << c.metric_id << std::setw(12) << number(c.raw) << std::setw(12)
        << number(c.bounds.bounds.min) << std::setw(12) << number(c.bounds.bounds.max) << std::setw(14)
        << to_string(c.bounds.provenance) << std::setw(8) << fixed(c.score, 3) << std::setw(8) << number(c.weight)
        << fixed(c.contribution) << '\n';
  }
  out << std::right;
  if (!t.unreported.empty()) {
    out << "  unreported:";
    for (const auto& id : t.unreported) out << ' ' << id;
    out << '\n';
  }
  out << "  U_base = " << (t.u_base ? fixed(*t.u_base) : std::string("-- (no weighted metric; ranked as 0)"))
      << "  phi = " << fixed(t.phi) << "  penalty = " << fixed(t.penalty) << "  U_eff = " << utility(t.u_eff)
      << '\n';
}

int cmd_explain(const Options& o, std::ostream& out, std::ostream& err) {
  Scenario s;
  if (!load(o.scenario_path, s, err)) return kExitFailure;
  const Explanation e = explain(evaluate(s), s);
  if (!o.tier.empty() && !e.find(o.tier)) {
    err << "no tier '" << o.tier << "' in " << o.scenario_path << '\n';
    return kExitFailure;
  }
  if (o.format == "json") {
    Explanation selected = e;
    if (!o.tier.empty()) selected.tiers = {*e.find(o.tier)};
    out << explanation_to_json(selected);
    return kExitOk;
  }
  out << "Scenario: " << e.scenario_name << "  (lambda = " << number(e.lambda) << ")\n";
  for (const TierExplanation& t : e.tiers) {
    if (!o.tier.empty() && t.tier_id != o.tier) continue;
    out << '\n';
    print_explanation(t, out);
  }
  out << "\nWinner: " << e.winner.value_or("none (no feasible tier)") << '\n';
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  Scenario s;
  if (!load(o.scenario_path, s, err)) return kExitFailure;
  SweepResult r;
  try {
    r = sweep(s, SweepSpec{parse_sweep_parameter(o.param), o.from, o.to, o.steps});
  } catch (const AnalysisError& e) {
    err << "sweep: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "sweep: " << e.what() << '\n';
    return kExitFailure;
  }
  if (o.format == "json") {
    out << sweep_to_json(r);
    return kExitOk;
  }
  out << "Sweep " << r.parameter << " over [" << number(o.from) << ", " << number(o.to) << "], " << o.steps
      << " steps\n\n";
  auto emit = [&out](std::ostringstream& line) {
    std::string text = line.str();
    text.erase(text.find_last_not_of(' ') + 1);
    out << text << '\n';
  };
  std::ostringstream header;
  header << std::left << std::setw(12) << "value" << std::setw(18) << "winner";
  for (const TierProfile& t : s.tiers) header << std::setw(18) << t.id;
  emit(header);
  for (const SweepRow& row : r.rows) {
    std::ostringstream line;
    line << std::left << std::setw(12) << number(row.value) << std::setw(18) << row.winner.value_or("-");
    for (const TierProfile& t : s.tiers) line << std::setw(18) << utility(row.u_eff.at(t.id));
    line << (row.crossover ? "<- crossover" : "");
    emit(line);
  }
  out << '\n';
  if (r.crossovers.empty()) {
    out << "No crossover: the winner is constant over the range.\n";
  }
  for (std::size_t i : r.crossovers) {
    out << "Crossover between " << number(r.rows[i - 1].value) << " and " << number(r.rows[i].value) << ": "
        << r.rows[i - 1].winner.value_or("none") << " -> " << r.rows[i].winner.value_or("none") << '\n';
  }
  return kExitOk;
}

void print_list(std::ostream& out, const char* label, const std::vector<std::string>& ids) {
  out << label;
  if (ids.empty()) out << " (none)";
  for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? ", " : " ") << ids[i];
  out << '\n';
}

int cmd_pareto(const Options& o, std::ostream& out, std::ostream& err) {
  Scenario s;
  if (!load(o.scenario_path, s, err)) return kExitFailure;
  ParetoResult r;
  try {
    r = pareto_front(s, o.objectives);
  } catch (const AnalysisError& e) {
    err << "pareto: " << e.what() << '\n';
    return kExitUsage;
  }
  if (o.format == "json") {
    out << pareto_to_json(r);
    return kExitOk;
  }
  print_list(out, "Objectives:", r.objectives);
  print_list(out, "Nondominated:", r.nondominated);
  out << "Dominated:";
  if (r.dominated.empty()) out << " (none)";
  bool first = true;
  for (const auto& [tier, witness] : r.dominated) {
    out << (first ? " " : ", ") << tier << " (by " << witness << ")";
    first = false;
  }
  out << '\n';
  print_list(out, "Excluded (missing objective):", r.excluded);
  print_list(out, "Infeasible:", r.infeasible);
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  Scenario s;
  if (!load(o.scenario_path, s, err)) return kExitFailure;
  out << "OK\n";
  return kExitOk;
}

std::filesystem::path default_scenario_dir() {
  for (const char* candidate : {TIERSELECT_BUNDLED_SCENARIO_DIR, TIERSELECT_INSTALLED_SCENARIO_DIR}) {
    std::error_code ec;
    if (std::filesystem::is_directory(candidate, ec)) return candidate;
  }
  return TIERSELECT_BUNDLED_SCENARIO_DIR;
}

Service* g_running = nullptr;

extern "C" void on_signal(int) {
  if (g_running) g_running->stop();
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  ServiceConfig config;
  config.host = o.host;
  config.max_body_bytes = o.max_body;
  config.port = 8080;
  if (const char* env = std::getenv("PORT")) {
    try {
      config.port = std::stoi(env);
    } catch (const std::exception&) {
      err << "PORT must be an integer, got '" << env << "'\n";
      return kExitUsage;
    }
  }
  if (o.port >= 0) config.port = o.port;

  std::filesystem::path dir = default_scenario_dir();
  if (const char* env = std::getenv("SCENARIO_DIR")) dir = env;
  if (!o.scenarios_dir.empty()) dir = o.scenarios_dir;
  if (!o.static_dir.empty()) config.static_dir = o.static_dir;

  Service service(ScenarioLibrary::load_directory(dir, err), config);
  const int port = service.bind();
  if (port < 0) {
    err << "cannot bind " << config.host << ':' << config.port << '\n';
    return kExitFailure;
  }
  out << "tierselect " << kEngineVersion << " serving on http://" << config.host << ':' << port << '\n';
  out.flush();
  g_running = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const bool ok = service.listen();
  g_running = nullptr;
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compute-tier placement decisions for spacecraft workloads", "tierselect"};
  app.set_version_flag("--version", std::string(kEngineVersion));
  app.require_subcommand(1, 1);

  Options o;
  const std::vector<std::string> result_formats{"json", "csv", "table"};
  const std::vector<std::string> report_formats{"json", "table"};

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Rank the tiers of a scenario");
  evaluate_cmd->add_option("scenario", o.scenario_path, "Scenario file")->required();
  evaluate_cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember(result_formats))
      ->default_val("table");

  auto* explain_cmd = app.add_subcommand("explain", "Show per-metric contributions");
  explain_cmd->add_option("scenario", o.scenario_path, "Scenario file")->required();
  explain_cmd->add_option("--tier", o.tier, "Tier to explain (default: all)");
  explain_cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember(report_formats))
      ->default_val("table");

  auto* sweep_cmd = app.add_subcommand("sweep", "Re-evaluate over a parameter range");
  sweep_cmd->add_option("scenario", o.scenario_path, "Scenario file")->required();
  sweep_cmd->add_option("--param", o.param, "lambda | weight:<metric> | threshold:<name>")->required();
  sweep_cmd->add_option("--from", o.from, "Range start")->required();
  sweep_cmd->add_option("--to", o.to, "Range end")->required();
  sweep_cmd->add_option("--steps", o.steps, "Number of evenly spaced values (>= 2)")->required();
  sweep_cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember(report_formats))
      ->default_val("table");

  auto* pareto_cmd = app.add_subcommand("pareto", "Nondominated feasible tiers");
  pareto_cmd->add_option("scenario", o.scenario_path, "Scenario file")->required();
  pareto_cmd->add_option("--objectives", o.objectives, "Comma-separated metric ids")
      ->required()
      ->delimiter(',');
  pareto_cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember(report_formats))
      ->default_val("table");

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
  validate_cmd->add_option("scenario", o.scenario_path, "Scenario file")->required();

  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP API");
  serve_cmd->add_option("--port", o.port, "Port (env PORT, default 8080; 0 picks a free port)");
  serve_cmd->add_option("--host", o.host, "Bind address")->default_val("0.0.0.0");
  serve_cmd->add_option("--scenarios", o.scenarios_dir, "Scenario library directory (env SCENARIO_DIR)");
  serve_cmd->add_option("--static", o.static_dir, "Directory of web UI assets to serve at /");
  serve_cmd->add_option("--max-body", o.max_body, "Request body size cap in bytes")->default_val(1 << 20);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kEngineVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (evaluate_cmd->parsed()) return cmd_evaluate(o, out, err);
  if (explain_cmd->parsed()) return cmd_explain(o, out, err);
  if (sweep_cmd->parsed()) return cmd_sweep(o, out, err);
  if (pareto_cmd->parsed()) return cmd_pareto(o, out, err);
  if (validate_cmd->parsed()) return cmd_validate(o, out, err);
  if (serve_cmd->parsed()) return cmd_serve(o, out, err);
  return kExitUsage;
}

}  // namespace tierselect::cli
