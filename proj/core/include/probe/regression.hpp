#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "probe/feature_space.hpp"
#include "probe/knowledge.hpp"

namespace probe {

/// Linear evaluation function H(x) = b0 + b . x. Features never selected by
/// the stepwise procedure keep coefficient exactly 0.
struct LinearHeuristic {
  std::vector<double> coefficients;    // size n + 1, intercept at index 0
  std::vector<std::size_t> included;   // selected feature indices, ascending
  int rank_deficient_skips = 0;        // features dropped for singular designs

  bool operator==(const LinearHeuristic&) const = default;
};

struct RegressionDatum {
  FeatureVector x;  // region centroid
  double y = 0.0;   // region p_hat
  double w = 1.0;   // > 0
};

/// Error-derived weight w = 1/(log e)^2. Returns +infinity for e == 1
/// exactly; regression_data replaces those with ten times the largest
/// finite weight in the set.
double weight_of(const Region& region);

/// Regression data from regions: centroid -> p_hat with weight_of weights.
/// Regions that never received a point (total == 0) are skipped.
std::vector<RegressionDatum> regression_data(std::span<const Region> regions);

/// Forward-stepwise weighted least squares via normal equations: starting
/// from the intercept-only model, repeatedly adds the feature whose
/// inclusion most reduces the weighted residual sum of squares, stopping
/// when the best relative reduction falls below `tolerance` or no feature
/// is left. Features producing a singular design are skipped, never fatal.
/// Requires at least 2 data.
LinearHeuristic fit(std::span<const RegressionDatum> data, double tolerance);

/// Intercept plus dot product. Not clamped: only the ordering matters.
double linear_eval(const LinearHeuristic& h, const FeatureVector& x);

}  // namespace probe
