#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "probe/feature_space.hpp"

namespace probe {

/// One cell of learned knowledge: a feature-space box with its success
/// probability estimate, multiplicative error factor, sample counts and
/// the centroid of the points routed into it.
struct Region {
  Hyperrectangle box;
  double p_hat = 0.5;  // in (0, 1]
  double e = 1.0;      // >= 1; true p believed within ~[p_hat/e, p_hat*e]
  std::uint64_t successes = 0;  // s
  std::uint64_t total = 0;      // m
  FeatureVector centroid;       // mean of routed points; box center while total == 0

  bool operator==(const Region&) const = default;
};

/// Disjoint axis-parallel partition of the feature bounds. Doubles as the
/// discrete evaluation function: H(x) = p_hat of the cell containing x.
///
/// Boundary ownership is the half-open convention: a split at threshold t
/// sends x <= t left and x > t right, so every point of the bounds belongs
/// to exactly one region.
class RegionSet {
 public:
  /// Single region covering `bounds` with the given prior estimate.
  RegionSet(Hyperrectangle bounds, double prior_p, double prior_e);

  /// Assembles a set from parts (deserialization, refinement). The regions
  /// must partition `bounds`; validate() checks the cheap half of that.
  RegionSet(Hyperrectangle bounds, std::vector<Region> regions,
            std::uint64_t clamp_count = 0);

  RegionSet(const RegionSet& other);
  RegionSet& operator=(const RegionSet& other);

  const Hyperrectangle& feature_bounds() const { return bounds_; }
  const std::vector<Region>& regions() const { return regions_; }
  std::size_t size() const { return regions_.size(); }

  /// Index of the unique region containing x. Points outside the bounds are
  /// clamped onto them first (counted, see clamp_count).
  std::size_t locate_index(const FeatureVector& x) const;
  const Region& locate(const FeatureVector& x) const;

  double discrete_heuristic(const FeatureVector& x) const;

  /// Routes labeled points to their regions and folds them into the counts
  /// and running-mean centroids. Estimates (p_hat, e) are left untouched.
  void update_counts(std::span<const SamplePoint> points);

  /// Replaces region `index` with `parts` (used by refinement). The parts
  /// must partition the old box.
  void replace(std::size_t index, std::vector<Region> parts);

  std::uint64_t clamp_count() const { return clamps_.load(); }

  /// Cheap structural checks: boxes inside bounds, intervals ordered,
  /// pairwise-disjoint interiors, centers route to their own region.
  /// Throws std::invalid_argument on the first violation.
  void validate() const;

  bool operator==(const RegionSet& other) const;

 private:
  bool region_owns(const Region& r, const FeatureVector& x) const;

  Hyperrectangle bounds_;
  std::vector<Region> regions_;
  mutable std::atomic<std::uint64_t> clamps_{0};
};

}  // namespace probe
