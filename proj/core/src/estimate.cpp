#include "probe/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace probe {

std::pair<std::uint64_t, std::uint64_t> elementary_counts(
    std::span<const SearchTree> trees, const Hyperrectangle& box) {
  std::uint64_t s = 0;
  std::uint64_t m = 0;
  for (const SearchTree& tree : trees) {
    for (const SearchNode& node : tree.nodes) {
      if (!node.developed || !box.contains(node.x)) continue;
      ++m;
      if (node.on_solution_path) ++s;
    }
  }
  return {s, m};
}

double raw_probability(std::uint64_t s, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("raw_probability: no observations");
  return static_cast<double>(s) / static_cast<double>(m);
}

SmoothedEstimate smoothed_estimate(std::uint64_t s, std::uint64_t m,
                                   const EstimatorConfig& cfg) {
  if (s > m) throw std::invalid_argument("smoothed_estimate: s exceeds m");
  const double denom = static_cast<double>(m) + cfg.laplace_b;
  const double p = (static_cast<double>(s) + cfg.laplace_a) / denom;
  const double log_e = cfg.z * std::sqrt((1.0 - p) / (p * denom));
  return {p, std::exp(log_e)};
}

std::optional<double> normalization_factor(double p_cumulative,
                                           double p_elementary) {
  if (!(p_cumulative > 0.0 && p_cumulative <= 1.0)) {
    throw std::invalid_argument("normalization_factor: cumulative probability out of (0, 1]");
  }
  if (p_elementary < 0.0 || p_elementary > 1.0) {
    throw std::invalid_argument("normalization_factor: elementary probability out of [0, 1]");
  }
  if (p_elementary == 0.0) return std::nullopt;  // no information to rescale
  return p_cumulative / p_elementary;
}

NormalizeResult normalize(std::vector<ElementaryRegion> sub, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("normalize: factor must be positive");
  NormalizeResult result;
  for (ElementaryRegion& region : sub) {
    const double scaled = k * region.p_prime;
    if (scaled > kProbabilityCap) {
      region.p_prime = kProbabilityCap;
      ++result.capped;
    } else {
      region.p_prime = scaled;
    }
  }
  result.regions = std::move(sub);
  return result;
}

SmoothedEstimate reclassify(double p_hat, double e, double p_hat_new,
                            double e_new) {
  if (!(p_hat > 0.0 && p_hat < 1.0) || !(p_hat_new > 0.0 && p_hat_new < 1.0)) {
    throw std::invalid_argument("reclassify: probabilities must be in (0, 1)");
  }
  if (!(e >= 1.0) || !(e_new >= 1.0)) {
    throw std::invalid_argument("reclassify: error factors must be >= 1");
  }
  // e == 1 means exact knowledge: nothing to average with.
  if (e == 1.0 && e_new == 1.0) {
    if (p_hat != p_hat_new) {
      throw std::invalid_argument("reclassify: two exact estimates disagree");
    }
    return {p_hat, 1.0};
  }
  if (e == 1.0) return {p_hat, e};
  if (e_new == 1.0) return {p_hat_new, e_new};

  const double w = 1.0 / (std::log(e) * std::log(e));
  const double w_new = 1.0 / (std::log(e_new) * std::log(e_new));
  const double log_p =
      (w * std::log(p_hat) + w_new * std::log(p_hat_new)) / (w + w_new);
  const double log_e = 1.0 / std::sqrt(w + w_new);
  return {std::exp(log_p), std::exp(log_e)};
}

}  // namespace probe
