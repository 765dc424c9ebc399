#include <benchmark/benchmark.h>

#include "ncineq/inequality.hpp"
#include "ncineq/quantum.hpp"
#include "ncineq/scenario_io.hpp"

using namespace ncineq;

namespace {

void BM_build_hrep(benchmark::State& state) {
  Scenario s = build_n_cycle(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_hrep(s));
  }
}
BENCHMARK(BM_build_hrep)->Arg(5)->Arg(9);

void BM_enumerate_vertices(benchmark::State& state) {
  Scenario s = build_n_cycle(static_cast<int>(state.range(0)));
  HRep h = build_hrep(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_vertices(h));
  }
  state.SetLabel(std::to_string(enumerate_vertices(h).size()) + " vertices");
}
BENCHMARK(BM_enumerate_vertices)
    ->Arg(3)
    ->Arg(5)
    ->Arg(7)
    ->Arg(9)
    ->Unit(benchmark::kMillisecond);

void BM_score_vertices(benchmark::State& state) {
  Scenario s = build_n_cycle(static_cast<int>(state.range(0)));
  std::vector<Vertex> vertices = enumerate_vertices(build_hrep(s));
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_vertices(vertices, s));
  }
}
BENCHMARK(BM_score_vertices)->Arg(5)->Arg(9);

// The whole derivation: halfspace build, enumeration, constants.
void BM_derive(benchmark::State& state) {
  Scenario s = build_n_cycle(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    std::vector<Vertex> vertices = enumerate_vertices(build_hrep(s));
    benchmark::DoNotOptimize(compute_parameters(vertices, s));
  }
}
BENCHMARK(BM_derive)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_kcbs_realization(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kcbs_realization(n));
  }
}
BENCHMARK(BM_kcbs_realization)->Arg(5)->Arg(9);

void BM_evaluate_realization(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Scenario s = build_n_cycle(n);
  QuantumRealization q = kcbs_realization(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_realization(q, s));
  }
}
BENCHMARK(BM_evaluate_realization)->Arg(5)->Arg(9);

void BM_depolarize(benchmark::State& state) {
  QuantumRealization q = kcbs_realization(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(depolarize(q, 0.8));
  }
}
BENCHMARK(BM_depolarize)->Arg(5)->Arg(9);

void BM_scenario_round_trip(benchmark::State& state) {
  Scenario s = build_n_cycle(static_cast<int>(state.range(0)));
  std::string text = serialize_scenario(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(load_scenario(text));
  }
}
BENCHMARK(BM_scenario_round_trip)->Arg(5)->Arg(9);

void BM_realization_round_trip(benchmark::State& state) {
  QuantumRealization q = kcbs_realization(static_cast<int>(state.range(0)));
  std::string text = realization_json(q);
  for (auto _ : state) {
    benchmark::DoNotOptimize(realization_from_json(text));
  }
}
BENCHMARK(BM_realization_round_trip)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
