#include "probe/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace probe {

double dissimilarity(double p1, double e1, double p2, double e2) {
  if (!(p1 > 0.0 && p1 < 1.0) || !(p2 > 0.0 && p2 < 1.0)) {
    throw std::invalid_argument("dissimilarity: probabilities must be in (0, 1)");
  }
  if (!(e1 >= 1.0) || !(e2 >= 1.0)) {
    throw std::invalid_argument("dissimilarity: error factors must be >= 1");
  }
  return std::fabs(std::log(p1) - std::log(p2)) - std::log(e1 * e2);
}

double quinlan_dissimilarity(double p1, double p2) {
  if (!(p1 > 0.0 && p1 < 1.0) || !(p2 > 0.0 && p2 < 1.0)) {
    throw std::invalid_argument("quinlan_dissimilarity: probabilities must be in (0, 1)");
  }
  const double p_sum = p1 + p2;
  const double q1 = p1 / p_sum;
  const double q2 = p2 / p_sum;
  const double m_denom = 2.0 - p_sum;
  const double m1 = (1.0 - p1) / m_denom;
  const double m2 = (1.0 - p2) / m_denom;
  // grouped so the value is exactly symmetric under swapping p1 and p2
  return (q1 * std::log(q1) + q2 * std::log(q2)) +
         (m1 * std::log(m1) + m2 * std::log(m2));
}

namespace {

SplitCandidate::Side side_summary(std::span<const SamplePoint> points,
                                  std::size_t axis, double threshold,
                                  bool left, const EstimatorConfig& cfg) {
  SplitCandidate::Side side;
  for (const SamplePoint& p : points) {
    const bool is_left = p.x[axis] <= threshold;
    if (is_left != left) continue;
    ++side.total;
    if (p.success) ++side.successes;
  }
  const SmoothedEstimate est = smoothed_estimate(side.successes, side.total, cfg);
  side.p_hat = est.p_hat;
  side.e = est.e;
  return side;
}

}  // namespace

std::optional<SplitCandidate> best_split(std::span<const SamplePoint> points,
                                         const Hyperrectangle& cell,
                                         const EstimatorConfig& cfg) {
  const std::uint64_t min_count = static_cast<std::uint64_t>(cfg.min_cell_count);
  if (points.size() < 2 * static_cast<std::size_t>(cfg.min_cell_count)) {
    return std::nullopt;
  }

  std::optional<SplitCandidate> best;
  std::vector<double> values;
  values.reserve(points.size());
  for (std::size_t axis = 0; axis < cell.dims(); ++axis) {
    values.clear();
    for (const SamplePoint& p : points) values.push_back(p.x[axis]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      const double threshold = (values[i] + values[i + 1]) / 2.0;
      SplitCandidate::Side left = side_summary(points, axis, threshold, true, cfg);
      SplitCandidate::Side right = side_summary(points, axis, threshold, false, cfg);
      if (left.total < min_count || right.total < min_count) continue;
      const double d = dissimilarity(left.p_hat, left.e, right.p_hat, right.e);
      // Ascending axis/threshold enumeration: strict improvement implements
      // the (lowest axis, lowest threshold) tie-break.
      if (!best || d > best->d) {
        best = SplitCandidate{axis, threshold, d, left, right};
      }
    }
  }
  if (best && best->d > 0.0) return best;
  return std::nullopt;
}

namespace {

Region region_from_points(const Hyperrectangle& box,
                          std::span<const SamplePoint> points,
                          const EstimatorConfig& cfg, double scale,
                          int* capped) {
  Region r;
  r.box = box;
  r.centroid = FeatureVector(box.dims(), 0.0);
  for (const SamplePoint& p : points) {
    ++r.total;
    if (p.success) ++r.successes;
    for (std::size_t a = 0; a < box.dims(); ++a) r.centroid[a] += p.x[a];
  }
  if (r.total > 0) {
    for (double& c : r.centroid) c /= static_cast<double>(r.total);
  } else {
    r.centroid = box.center();
  }
  const SmoothedEstimate est = smoothed_estimate(r.successes, r.total, cfg);
  const double scaled = scale * est.p_hat;
  if (scaled > kProbabilityCap) {
    r.p_hat = kProbabilityCap;
    if (capped) ++*capped;
  } else {
    r.p_hat = scaled;
  }
  r.e = est.e;
  return r;
}

// Depth-first: emits left sub-tree then right, so the output region order is
// deterministic regardless of the input point order.
void split_recursive(const Hyperrectangle& box,
                     std::vector<SamplePoint>& points,
                     const EstimatorConfig& cfg, double scale, int* capped,
                     std::vector<Region>& out) {
  const std::optional<SplitCandidate> candidate = best_split(points, box, cfg);
  if (!candidate) {
    out.push_back(region_from_points(box, points, cfg, scale, capped));
    return;
  }
  auto [left_box, right_box] = box.split(candidate->axis, candidate->threshold);
  std::vector<SamplePoint> left_points;
  std::vector<SamplePoint> right_points;
  left_points.reserve(candidate->left.total);
  right_points.reserve(candidate->right.total);
  for (SamplePoint& p : points) {
    if (p.x[candidate->axis] <= candidate->threshold) {
      left_points.push_back(std::move(p));
    } else {
      right_points.push_back(std::move(p));
    }
  }
  split_recursive(left_box, left_points, cfg, scale, capped, out);
  split_recursive(right_box, right_points, cfg, scale, capped, out);
}

}  // namespace

RegionSet refine(const RegionSet& rs, std::span<const SamplePoint> points,
                 const EstimatorConfig& cfg, std::span<const double> scales,
                 int* capped) {
  if (!scales.empty() && scales.size() != rs.size()) {
    throw std::invalid_argument("refine: one scale per region required");
  }
  std::vector<std::vector<SamplePoint>> routed(rs.size());
  for (const SamplePoint& p : points) {
    routed[rs.locate_index(p.x)].push_back(p);
  }

  std::vector<Region> result;
  result.reserve(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const Region& original = rs.regions()[i];
    if (!best_split(routed[i], original.box, cfg)) {
      result.push_back(original);
      continue;
    }
    const double scale = scales.empty() ? 1.0 : scales[i];
    split_recursive(original.box, routed[i], cfg, scale, capped, result);
  }
  return RegionSet(rs.feature_bounds(), std::move(result), rs.clamp_count());
}

}  // namespace probe
