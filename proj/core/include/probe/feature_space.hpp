#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace probe {

/// A point in feature space. Dimension is fixed per domain (4 for the tile
/// domain) but the core structures work for any dimension.
using FeatureVector = std::vector<double>;

/// One observed search state mapped into feature space, labeled with whether
/// it lay on a solution path.
struct SamplePoint {
  FeatureVector x;
  bool success = false;
};

/// Axis-parallel box: one closed interval [lo, hi] per axis.
///
/// Boxes produced by splitting share boundary values; which side owns a
/// shared boundary is decided by the partition that holds them (see
/// RegionSet::locate), not by the box itself.
class Hyperrectangle {
 public:
  Hyperrectangle() = default;
  Hyperrectangle(FeatureVector lo, FeatureVector hi);

  std::size_t dims() const { return lo_.size(); }
  double lo(std::size_t axis) const { return lo_[axis]; }
  double hi(std::size_t axis) const { return hi_[axis]; }
  const FeatureVector& lo() const { return lo_; }
  const FeatureVector& hi() const { return hi_; }

  /// Closed-box membership: lo_i <= x_i <= hi_i on every axis.
  bool contains(const FeatureVector& x) const;

  /// True when `inner` lies entirely within this box.
  bool encloses(const Hyperrectangle& inner) const;

  FeatureVector center() const;
  FeatureVector clamp(FeatureVector x) const;
  double volume() const;

  /// Cuts the box at `threshold` on `axis`. The left box keeps x <= threshold,
  /// the right box keeps x > threshold. Requires lo < threshold < hi.
  std::pair<Hyperrectangle, Hyperrectangle> split(std::size_t axis,
                                                  double threshold) const;

  bool operator==(const Hyperrectangle&) const = default;

 private:
  FeatureVector lo_;
  FeatureVector hi_;
};

}  // namespace probe
