#include "probe/learner.hpp"

#include <algorithm>
#include <cmath>

#include "probe/cluster.hpp"
#include "probe/errors.hpp"
#include "probe/rng.hpp"

namespace probe {

std::vector<int> LearnerConfig::effective_depth_schedule() const {
  if (!depth_schedule.empty()) return depth_schedule;
  std::vector<int> schedule(static_cast<std::size_t>(iterations));
  for (int i = 0; i < iterations; ++i) schedule[static_cast<std::size_t>(i)] = 4 + 2 * i;
  return schedule;
}

void LearnerConfig::validate() const {
  if (iterations < 1) throw ConfigError("iterations", "must be >= 1");
  if (problems_per_iteration < 1) {
    throw ConfigError("problems_per_iteration", "must be >= 1");
  }
  if (budget.max_developed < 1) throw ConfigError("budget", "must be >= 1");
  if (!(estimator.z > 0.0)) throw ConfigError("z", "must be > 0");
  if (!(estimator.laplace_a > 0.0)) throw ConfigError("laplace_a", "must be > 0");
  if (!(estimator.laplace_b > estimator.laplace_a)) {
    throw ConfigError("laplace_b", "must exceed laplace_a");
  }
  if (estimator.min_cell_count < 1) {
    throw ConfigError("min_cell_count", "must be >= 1");
  }
  if (!(regression_tolerance > 0.0)) {
    throw ConfigError("regression_tolerance", "must be > 0");
  }
  if (!depth_schedule.empty()) {
    if (depth_schedule.size() != static_cast<std::size_t>(iterations)) {
      throw ConfigError("depth_schedule", "needs one entry per iteration");
    }
    for (std::size_t i = 0; i < depth_schedule.size(); ++i) {
      if (depth_schedule[i] < 0) {
        throw ConfigError("depth_schedule", "depths must be >= 0");
      }
      if (i > 0 && depth_schedule[i] < depth_schedule[i - 1]) {
        throw ConfigError("depth_schedule", "must be non-decreasing");
      }
    }
  }
}

std::vector<ProblemInstance> curriculum(const LearnerConfig& cfg, int iteration) {
  cfg.validate();
  if (iteration < 0 || iteration >= cfg.iterations) {
    throw ConfigError("iterations", "iteration index out of schedule");
  }
  const int depth = cfg.effective_depth_schedule()[static_cast<std::size_t>(iteration)];
  std::vector<ProblemInstance> problems;
  problems.reserve(static_cast<std::size_t>(cfg.problems_per_iteration));
  const State goal = goal_state();
  for (int j = 0; j < cfg.problems_per_iteration; ++j) {
    const std::uint64_t seed =
        mix_seed(cfg.seed, static_cast<std::uint64_t>(iteration),
                 static_cast<std::uint64_t>(j));
    problems.push_back(scramble(goal, depth, seed));
  }
  return problems;
}

Evaluator make_evaluator(const Knowledge& k, HeuristicMode mode,
                         const State& goal) {
  if (mode == HeuristicMode::linear && k.linear.has_value()) {
    const LinearHeuristic h = *k.linear;
    return [h, goal](const State& s) { return linear_eval(h, features(s, goal)); };
  }
  const RegionSet* rs = &k.region_set;
  return [rs, goal](const State& s) {
    return rs->discrete_heuristic(features(s, goal));
  };
}

namespace {

struct SolveStats {
  std::vector<SearchTree> trees;
  int solved = 0;
  double mean_developed = 0.0;
  double mean_success_fraction = 0.0;
};

SolveStats solve_batch(const Knowledge& k,
                       std::span<const ProblemInstance> problems,
                       const LearnerConfig& cfg, bool force_breadth_first) {
  SolveStats stats;
  stats.trees.reserve(problems.size());
  for (const ProblemInstance& problem : problems) {
    SearchTree tree =
        force_breadth_first
            ? breadth_first(problem, cfg.budget)
            : best_first(problem,
                         make_evaluator(k, cfg.heuristic_mode, problem.goal),
                         cfg.budget);
    mark_success(tree);
    stats.trees.push_back(std::move(tree));
  }
  for (const SearchTree& tree : stats.trees) {
    if (tree.solved) ++stats.solved;
    stats.mean_developed += tree.developed_count;
    if (tree.solved && tree.developed_count > 0) {
      stats.mean_success_fraction +=
          static_cast<double>(*tree.solution_length + 1) / tree.developed_count;
    }
  }
  if (!problems.empty()) {
    stats.mean_developed /= static_cast<double>(problems.size());
    stats.mean_success_fraction /= static_cast<double>(problems.size());
  }
  return stats;
}

std::vector<SamplePoint> collect_points(std::span<const SearchTree> trees) {
  std::vector<SamplePoint> points;
  for (const SearchTree& tree : trees) {
    for (const int index : tree.development_order) {
      const SearchNode& node = tree.nodes[index];
      points.push_back(SamplePoint{node.x, node.on_solution_path});
    }
  }
  return points;
}

int common_depth(std::span<const ProblemInstance> problems) {
  if (problems.empty()) return -1;
  const int depth = problems.front().scramble_depth;
  for (const ProblemInstance& p : problems) {
    if (p.scramble_depth != depth) return -1;
  }
  return depth;
}

}  // namespace

IterationMetrics run_iteration(Knowledge& k,
                               std::span<const ProblemInstance> problems,
                               const LearnerConfig& cfg) {
  IterationMetrics metrics;
  metrics.iteration = k.iteration_index;
  metrics.depth = common_depth(problems);
  metrics.attempted = static_cast<int>(problems.size());

  // (1) SOLVE. Iteration 0 is the trivial initial heuristic: breadth-first,
  // and therefore the unbiased anchor for every later normalization.
  const bool anchor = k.iteration_index == 0;
  const std::uint64_t clamps_before = k.region_set.clamp_count();
  SolveStats stats = solve_batch(k, problems, cfg, anchor);
  metrics.solved = stats.solved;
  metrics.solved_fraction =
      problems.empty() ? 0.0
                       : static_cast<double>(stats.solved) /
                             static_cast<double>(problems.size());
  metrics.mean_developed = stats.mean_developed;
  metrics.mean_success_fraction = stats.mean_success_fraction;

  // Without a single solution there is nothing to learn from; the batch
  // contributes metrics only.
  if (stats.solved == 0) {
    metrics.region_count = k.region_set.size();
    return metrics;
  }

  const std::vector<SamplePoint> points = collect_points(stats.trees);
  RegionSet& rs = k.region_set;

  // (2) ELEMENTARY: per cumulative rectangle, counts and smoothed estimates
  // from this batch. Routing uses the partition's own boundary convention.
  std::vector<ElementaryRegion> elementary(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    elementary[i].box = rs.regions()[i].box;
  }
  for (const SamplePoint& p : points) {
    ElementaryRegion& cell = elementary[rs.locate_index(p.x)];
    ++cell.total;
    if (p.success) ++cell.successes;
  }
  for (ElementaryRegion& cell : elementary) {
    if (cell.total > 0) cell.p_raw = raw_probability(cell.successes, cell.total);
    const SmoothedEstimate est =
        smoothed_estimate(cell.successes, cell.total, cfg.estimator);
    cell.p_prime = est.p_hat;
    cell.e_prime = est.e;
  }

  // (3) NORMALIZE: rescale each rectangle's elementary estimate onto the
  // cumulative scale. Skipped for the anchor batch and wherever the batch
  // put no mass in a rectangle.
  std::vector<double> scales(rs.size(), 1.0);
  double k_sum = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (anchor || elementary[i].total == 0) continue;
    const std::optional<double> factor =
        normalization_factor(rs.regions()[i].p_hat, elementary[i].p_prime);
    if (!factor) continue;
    scales[i] = *factor;
    ++metrics.k_count;
    k_sum += *factor;
    metrics.k_min = metrics.k_count == 1 ? *factor : std::min(metrics.k_min, *factor);
    metrics.k_max = std::max(metrics.k_max, *factor);
    NormalizeResult normalized = normalize({elementary[i]}, *factor);
    metrics.capped += normalized.capped;
    elementary[i] = std::move(normalized.regions.front());
  }
  if (metrics.k_count > 0) metrics.k_mean = k_sum / metrics.k_count;

  // (4) RECLASSIFY: error-weighted merge of the normalized batch estimates
  // into the cumulative ones. A rectangle that never held data is pure
  // prior, which carries no evidence, so the measurement replaces it; this
  // keeps anchor-iteration estimates exactly the breadth-first statistics.
  {
    std::vector<Region> updated = rs.regions();
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (elementary[i].total == 0) continue;
      Region& region = updated[i];
      if (region.total == 0) {
        region.p_hat = elementary[i].p_prime;
        region.e = elementary[i].e_prime;
      } else {
        const SmoothedEstimate merged =
            reclassify(region.p_hat, region.e, elementary[i].p_prime,
                       elementary[i].e_prime);
        region.p_hat = merged.p_hat;
        region.e = merged.e;
      }
    }
    rs = RegionSet(rs.feature_bounds(), std::move(updated), rs.clamp_count());
  }

  // (5) REFINE: absorb the batch into counts and centroids, then split
  // wherever the (bias-corrected) data shows an assured difference.
  rs.update_counts(points);
  rs = refine(rs, points, cfg.estimator, scales, &metrics.capped);

  // (6) REGRESS: refit the interpolating heuristic over region centroids.
  if (cfg.heuristic_mode == HeuristicMode::linear) {
    const std::vector<RegressionDatum> data = regression_data(rs.regions());
    if (data.size() >= 2) {
      k.linear = fit(data, cfg.regression_tolerance);
    }
  }

  // (7) METRICS.
  metrics.region_count = rs.size();
  metrics.clamped = rs.clamp_count() - clamps_before;
  ++k.iteration_index;
  return metrics;
}

TrainResult train(const LearnerConfig& cfg, const IterationObserver& observer) {
  cfg.validate();
  const SmoothedEstimate prior = smoothed_estimate(0, 0, cfg.estimator);
  TrainResult result{
      Knowledge{RegionSet(feature_bounds(), prior.p_hat, prior.e), std::nullopt, 0},
      {}};
  for (int i = 0; i < cfg.iterations; ++i) {
    const std::vector<ProblemInstance> problems = curriculum(cfg, i);
    IterationMetrics metrics = run_iteration(result.knowledge, problems, cfg);
    metrics.iteration = i;
    result.metrics.push_back(metrics);
    if (observer) observer(result.knowledge, result.metrics.back());
  }
  return result;
}

IterationMetrics evaluate(const Knowledge& k,
                          std::span<const ProblemInstance> problems,
                          const LearnerConfig& cfg) {
  IterationMetrics metrics;
  metrics.iteration = k.iteration_index;
  metrics.depth = common_depth(problems);
  metrics.attempted = static_cast<int>(problems.size());
  const SolveStats stats = solve_batch(k, problems, cfg, false);
  metrics.solved = stats.solved;
  metrics.solved_fraction =
      problems.empty() ? 0.0
                       : static_cast<double>(stats.solved) /
                             static_cast<double>(problems.size());
  metrics.mean_developed = stats.mean_developed;
  metrics.mean_success_fraction = stats.mean_success_fraction;
  metrics.region_count = k.region_set.size();
  return metrics;
}

}  // namespace probe
