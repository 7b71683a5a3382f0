#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "probe/estimate.hpp"
#include "probe/feature_space.hpp"
#include "probe/knowledge.hpp"

namespace probe {

/// A candidate axis-parallel boundary with its dissimilarity score and the
/// per-side count/estimate summaries it was scored from.
struct SplitCandidate {
  struct Side {
    std::uint64_t successes = 0;
    std::uint64_t total = 0;
    double p_hat = 0.0;
    double e = 1.0;
  };

  std::size_t axis = 0;
  double threshold = 0.0;  // strictly inside the cell's interval on `axis`
  double d = 0.0;
  Side left;   // points with x[axis] <= threshold
  Side right;  // points with x[axis] > threshold
};

/// The utility dissimilarity between two probability estimates:
///   d = |log p1 - log p2| - log(e1 * e2)
/// Positive d means the difference exceeds the combined error, justifying
/// a split.
double dissimilarity(double p1, double e1, double p2, double e2);

/// Information-theoretic comparison measure, implemented for side-by-side
/// experiments only; refinement never uses it:
///   d' = q1 log q1 + q2 log q2 + m1 log m1 + m2 log m2
/// with q_i = p_i / (p1 + p2) and m_i = (1 - p_i) / (2 - p1 - p2).
double quinlan_dissimilarity(double p1, double p2);

/// Scores every boundary at the midpoints between consecutive distinct
/// point values, per axis, and returns the candidate with the largest
/// positive d, or nothing when no boundary qualifies. Both sides of a
/// candidate must hold at least cfg.min_cell_count points. Ties on d go to
/// the lowest axis, then the lowest threshold.
std::optional<SplitCandidate> best_split(std::span<const SamplePoint> points,
                                         const Hyperrectangle& cell,
                                         const EstimatorConfig& cfg);

/// Recursively splits each region around its routed points until no
/// candidate has d > 0. Split regions are replaced by sub-regions whose
/// counts and centroids come from their routed points and whose estimates
/// come from smoothed_estimate, scaled by the owning original region's
/// entry in `scales` (empty = all ones; used to put fresh estimates on the
/// bias-corrected scale). Unsplit regions are returned untouched.
RegionSet refine(const RegionSet& rs, std::span<const SamplePoint> points,
                 const EstimatorConfig& cfg,
                 std::span<const double> scales = {}, int* capped = nullptr);

}  // namespace probe
