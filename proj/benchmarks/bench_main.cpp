#include <benchmark/benchmark.h>

#include "reducto/features.hpp"
#include "reducto/generator.hpp"
#include "reducto/params.hpp"
#include "reducto/quality_store.hpp"
#include "reducto/rules.hpp"
#include "reducto/sat_setups.hpp"
#include "reducto/search.hpp"
#include "reducto/solver.hpp"
#include "reducto/train.hpp"

using namespace reducto;

namespace {

std::vector<sat::Formula> instances(int vars, std::size_t count) { return random_instances(17, count, vars, 4.0); }

void BM_ResolutionMoves(benchmark::State& state) {
  const auto phis = instances(static_cast<int>(state.range(0)), 32);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sat::resolution_moves(phis[i++ % phis.size()]));
}
BENCHMARK(BM_ResolutionMoves)->Arg(6)->Arg(10)->Arg(16);

void BM_ExtensionMoves(benchmark::State& state) {
  const auto phis = instances(static_cast<int>(state.range(0)), 32);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sat::extension_moves(phis[i++ % phis.size()]));
}
BENCHMARK(BM_ExtensionMoves)->Arg(6)->Arg(16);

void BM_Features(benchmark::State& state) {
  const auto phis = instances(12, 32);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(learn::features(phis[i++ % phis.size()]));
}
BENCHMARK(BM_Features);

void BM_Search(benchmark::State& state, const char* setup_name) {
  const auto setup = sat::make_setup(setup_name);
  const auto theta = learn::init_params();
  const learn::LinearEvaluator evaluator(theta);
  const auto phis = instances(static_cast<int>(state.range(0)), 16);
  SearchConfig cfg;
  cfg.max_nodes = 500;
  std::size_t i = 0;
  for (auto _ : state) {
    cfg.seed = i;
    benchmark::DoNotOptimize(ams_search(phis[i++ % phis.size()], setup, evaluator, cfg));
  }
}
BENCHMARK_CAPTURE(BM_Search, flip, "flip")->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Search, resolution, "resolution")->Arg(6)->Unit(benchmark::kMillisecond);

void BM_TrainEpoch(benchmark::State& state) {
  const auto setup = sat::flip_setup();
  const auto theta = learn::init_params();
  const learn::LinearEvaluator evaluator(theta);
  learn::QualityStore store;
  SearchConfig cfg;
  for (const auto& phi : instances(8, 20)) learn::merge_quality(store, ams_search(phi, setup, evaluator, cfg).quality);
  const auto set = learn::training_set(store);
  learn::TrainOptions options;
  options.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(learn::train(theta, set, options));
  state.counters["examples"] = static_cast<double>(set.size());
}
BENCHMARK(BM_TrainEpoch)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
