#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "probe/feature_space.hpp"
#include "probe/search.hpp"

namespace probe {

/// Estimation knobs. The defaults make the dissimilarity test roughly a
/// two-sigma check on the log scale.
struct EstimatorConfig {
  double z = 2.0;          // confidence multiplier, > 0
  double laplace_a = 1.0;  // p_hat = (s + a) / (m + b)
  double laplace_b = 2.0;  // b > a > 0
  int min_cell_count = 3;  // minimum m for a cell to carry its own estimate
};

struct SmoothedEstimate {
  double p_hat;
  double e;
};

/// A probability measurement taken from the current batch of search trees,
/// before bias correction.
struct ElementaryRegion {
  Hyperrectangle box;
  std::optional<double> p_raw;  // s/m, absent when m == 0
  double p_prime = 0.5;         // smoothed estimate, in (0, 1)
  double e_prime = 1.0;         // error factor, >= 1
  std::uint64_t successes = 0;
  std::uint64_t total = 0;
};

/// Probabilities never reach 1 exactly; scaled estimates are capped here.
inline constexpr double kProbabilityCap = 1.0 - 1e-6;

/// Counts developed nodes whose feature vectors fall in `box` (closed-box
/// membership) across success-labeled trees: m = all of them, s = those on
/// solution paths. Failed trees contribute denominator only.
std::pair<std::uint64_t, std::uint64_t> elementary_counts(
    std::span<const SearchTree> trees, const Hyperrectangle& box);

/// Exact ratio s/m. Throws std::invalid_argument when m == 0.
double raw_probability(std::uint64_t s, std::uint64_t m);

/// Laplace-smoothed estimate with a multiplicative error factor:
///   p_hat = (s + a) / (m + b)
///   log e = z * sqrt((1 - p_hat) / (p_hat * (m + b)))
/// m = 0 yields the prior a/b with a large e.
SmoothedEstimate smoothed_estimate(std::uint64_t s, std::uint64_t m,
                                   const EstimatorConfig& cfg);

/// Ratio rescaling a batch of elementary estimates onto the cumulative
/// scale: k = p_cumulative / p_elementary. Empty evidence (p_elementary
/// <= 0) carries no information, so there is no factor.
/// Out-of-range probabilities throw std::invalid_argument.
std::optional<double> normalization_factor(double p_cumulative,
                                           double p_elementary);

struct NormalizeResult {
  std::vector<ElementaryRegion> regions;
  int capped = 0;  // times k * p' overshot and was clipped to the cap
};

/// Replaces each p' with min(cap, k * p'); error factors unchanged.
NormalizeResult normalize(std::vector<ElementaryRegion> sub, double k);

/// Error-weighted average of two estimates of the same quantity, in log
/// space with inverse-variance weights w = 1/(log e)^2. The merged error
/// factor never exceeds either input. An estimate with e == 1 exactly is
/// authoritative; two authoritative estimates that disagree throw
/// std::invalid_argument.
SmoothedEstimate reclassify(double p_hat, double e, double p_hat_new,
                            double e_new);

}  // namespace probe
