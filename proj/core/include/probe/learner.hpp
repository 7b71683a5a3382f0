#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "probe/domain.hpp"
#include "probe/estimate.hpp"
#include "probe/knowledge.hpp"
#include "probe/regression.hpp"
#include "probe/search.hpp"

namespace probe {

enum class HeuristicMode { discrete, linear };

struct LearnerConfig {
  int iterations = 10;
  int problems_per_iteration = 25;
  /// Scramble depth per iteration; must be non-decreasing and one entry per
  /// iteration. Empty = the default ramp 4, 6, 8, ... .
  std::vector<int> depth_schedule;
  SearchBudget budget{1000};
  HeuristicMode heuristic_mode = HeuristicMode::linear;
  EstimatorConfig estimator{};
  double regression_tolerance = 0.01;
  std::uint64_t seed = 1;

  std::vector<int> effective_depth_schedule() const;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// The accumulated model: the region set (always usable as the discrete
/// evaluation function) plus the optional linear fit over its centroids.
struct Knowledge {
  RegionSet region_set;
  std::optional<LinearHeuristic> linear;
  int iteration_index = 0;

  bool operator==(const Knowledge&) const = default;
};

struct IterationMetrics {
  int iteration = 0;
  int depth = -1;  // -1 when the batch mixes depths
  int attempted = 0;
  int solved = 0;
  double solved_fraction = 0.0;
  double mean_developed = 0.0;
  /// Mean over trees of (success-labeled developed nodes / developed nodes).
  double mean_success_fraction = 0.0;
  std::size_t region_count = 0;
  int k_count = 0;  // rectangles that received a normalization factor
  double k_min = 0.0;
  double k_mean = 0.0;
  double k_max = 0.0;
  int capped = 0;            // estimates clipped at the probability cap
  std::uint64_t clamped = 0; // points clamped onto the feature bounds
};

/// Deterministic batch of training problems for iteration i: instances at
/// depth_schedule[i] with seeds derived from (cfg.seed, i, instance index).
std::vector<ProblemInstance> curriculum(const LearnerConfig& cfg, int iteration);

/// Evaluator for the knowledge's heuristic against a fixed goal. Linear mode
/// falls back to the discrete map until a fit exists.
Evaluator make_evaluator(const Knowledge& k, HeuristicMode mode,
                         const State& goal);

/// One pass of the two-stage loop:
///   solve -> elementary estimates -> normalize -> reclassify -> refine
///   -> regress -> metrics.
/// Iteration 0 searches breadth-first (the trivial initial heuristic) and is
/// the unbiased anchor: its estimates are adopted without normalization.
/// A batch with zero solved problems leaves the knowledge untouched.
IterationMetrics run_iteration(Knowledge& k,
                               std::span<const ProblemInstance> problems,
                               const LearnerConfig& cfg);

using IterationObserver =
    std::function<void(const Knowledge&, const IterationMetrics&)>;

struct TrainResult {
  Knowledge knowledge;
  std::vector<IterationMetrics> metrics;
};

/// The full curriculum loop from the trivial prior. Pure function of cfg.
TrainResult train(const LearnerConfig& cfg, const IterationObserver& observer = {});

/// Solves held-out problems with the knowledge's heuristic and reports
/// metrics. No learning side effects.
IterationMetrics evaluate(const Knowledge& k,
                          std::span<const ProblemInstance> problems,
                          const LearnerConfig& cfg);

}  // namespace probe
