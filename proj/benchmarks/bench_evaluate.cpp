#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "tierselect/analysis.hpp"
#include "tierselect/scenario_io.hpp"
#include "tierselect/scoring.hpp"

namespace ts = tierselect;

namespace {

const std::filesystem::path kDir = TIERSELECT_BENCH_SCENARIO_DIR;

// Full-information scenario with `tiers` tiers over `metrics` custom metrics.
ts::Scenario synthetic(int tiers, int metrics) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ts::Scenario s;
  s.name = "synthetic";
  for (int m = 0; m < metrics; ++m) {
    s.metrics.push_back({"m" + std::to_string(m),
                         m % 2 ? ts::Direction::LowerBetter : ts::Direction::HigherBetter, std::nullopt,
                         0.1 + u(rng), "u", false});
  }
  for (int t = 0; t < tiers; ++t) {
    ts::TierProfile p;
    p.id = "T" + std::to_string(t);
    for (const auto& m : s.metrics) p.values[m.id] = u(rng);
    s.tiers.push_back(std::move(p));
  }
  return s;
}

void BM_EvaluateIds(benchmark::State& state) {
  const ts::Scenario s = ts::load_scenario_file(kDir / "ids.json");
  for (auto _ : state) benchmark::DoNotOptimize(ts::evaluate(s));
}
BENCHMARK(BM_EvaluateIds);

void BM_EvaluateSuncatcher(benchmark::State& state) {
  const ts::Scenario s = ts::load_scenario_file(kDir / "suncatcher.json");
  for (auto _ : state) benchmark::DoNotOptimize(ts::evaluate(s));
}
BENCHMARK(BM_EvaluateSuncatcher);

void BM_EvaluateSynthetic(benchmark::State& state) {
  const ts::Scenario s = synthetic(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(ts::evaluate(s));
  state.SetComplexityN(state.range(0) * state.range(1));
}
BENCHMARK(BM_EvaluateSynthetic)->ArgsProduct({{4, 16, 64, 256}, {8, 32}})->Complexity();

void BM_ParetoSynthetic(benchmark::State& state) {
  const ts::Scenario s = synthetic(static_cast<int>(state.range(0)), 4);
  const std::vector<std::string> objectives{"m0", "m1", "m2", "m3"};
  for (auto _ : state) benchmark::DoNotOptimize(ts::pareto_front(s, objectives));
}
BENCHMARK(BM_ParetoSynthetic)->Arg(16)->Arg(64)->Arg(256);

void BM_SweepLambda(benchmark::State& state) {
  const ts::Scenario s = ts::load_scenario_file(kDir / "suncatcher.json");
  for (auto _ : state) benchmark::DoNotOptimize(ts::sweep(s, {ts::sweep_param::Lambda{}, 0.0, 1.0, 101}));
}
BENCHMARK(BM_SweepLambda);

void BM_ParseSuncatcher(benchmark::State& state) {
  const std::string text = ts::serialize_scenario(ts::load_scenario_file(kDir / "suncatcher.json"));
  for (auto _ : state) benchmark::DoNotOptimize(ts::parse_scenario(text));
}
BENCHMARK(BM_ParseSuncatcher);

}  // namespace

// libbenchmark_main.a ships as LTO bytecode from another compiler release.
BENCHMARK_MAIN();
