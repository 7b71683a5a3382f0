#include <benchmark/benchmark.h>

#include "probe/learner.hpp"
#include "probe/rng.hpp"

namespace {

using namespace probe;

void BM_BreadthFirst(benchmark::State& state) {
  const ProblemInstance p =
      scramble(goal_state(), static_cast<int>(state.range(0)), 12);
  for (auto _ : state) {
    SearchTree tree = breadth_first(p, {1000});
    benchmark::DoNotOptimize(tree.developed_count);
  }
}
BENCHMARK(BM_BreadthFirst)->Arg(6)->Arg(10)->Arg(14);

void BM_GuidedBestFirst(benchmark::State& state) {
  LearnerConfig cfg;
  cfg.iterations = 5;
  cfg.problems_per_iteration = 15;
  const TrainResult trained = train(cfg);
  const ProblemInstance p =
      scramble(goal_state(), static_cast<int>(state.range(0)), 12);
  const Evaluator h =
      make_evaluator(trained.knowledge, cfg.heuristic_mode, p.goal);
  for (auto _ : state) {
    SearchTree tree = best_first(p, h, {1000});
    benchmark::DoNotOptimize(tree.developed_count);
  }
}
BENCHMARK(BM_GuidedBestFirst)->Arg(6)->Arg(10)->Arg(14);

void BM_Features(benchmark::State& state) {
  const State g = goal_state();
  const ProblemInstance p = scramble(g, 20, 3);
  for (auto _ : state) {
    FeatureVector x = features(p.start, g);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Features);

}  // namespace

BENCHMARK_MAIN();
