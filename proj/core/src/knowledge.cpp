#include "probe/knowledge.hpp"

#include <stdexcept>
#include <string>

namespace probe {

namespace {

Region make_prior_region(const Hyperrectangle& bounds, double prior_p,
                         double prior_e) {
  if (!(prior_p > 0.0 && prior_p <= 1.0)) {
    throw std::invalid_argument("prior probability must be in (0, 1]");
  }
  if (!(prior_e >= 1.0)) {
    throw std::invalid_argument("prior error factor must be >= 1");
  }
  Region r;
  r.box = bounds;
  r.p_hat = prior_p;
  r.e = prior_e;
  r.centroid = bounds.center();
  return r;
}

}  // namespace

RegionSet::RegionSet(Hyperrectangle bounds, double prior_p, double prior_e)
    : bounds_(std::move(bounds)) {
  regions_.push_back(make_prior_region(bounds_, prior_p, prior_e));
}

RegionSet::RegionSet(Hyperrectangle bounds, std::vector<Region> regions,
                     std::uint64_t clamp_count)
    : bounds_(std::move(bounds)), regions_(std::move(regions)),
      clamps_(clamp_count) {
  if (regions_.empty()) {
    throw std::invalid_argument("region set needs at least one region");
  }
}

RegionSet::RegionSet(const RegionSet& other)
    : bounds_(other.bounds_), regions_(other.regions_),
      clamps_(other.clamps_.load()) {}

RegionSet& RegionSet::operator=(const RegionSet& other) {
  bounds_ = other.bounds_;
  regions_ = other.regions_;
  clamps_.store(other.clamps_.load());
  return *this;
}

bool RegionSet::operator==(const RegionSet& other) const {
  return bounds_ == other.bounds_ && regions_ == other.regions_ &&
         clamps_.load() == other.clamps_.load();
}

// Ownership test under the half-open convention: the low edge of a region
// belongs to its left neighbor, except on the outer boundary. Thresholds are
// strictly inside their parent interval, so a region edge can only coincide
// with the outer bound when the region was never cut there; the comparisons
// below are exact, no epsilons.
bool RegionSet::region_owns(const Region& r, const FeatureVector& x) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > r.box.hi(i)) return false;
    if (x[i] < r.box.lo(i)) return false;
    if (x[i] == r.box.lo(i) && r.box.lo(i) != bounds_.lo(i)) return false;
  }
  return true;
}

std::size_t RegionSet::locate_index(const FeatureVector& x) const {
  if (x.size() != bounds_.dims()) {
    throw std::invalid_argument("locate: point dimension mismatch");
  }
  const FeatureVector* point = &x;
  FeatureVector clamped;
  if (!bounds_.contains(x)) {
    clamped = bounds_.clamp(x);
    point = &clamped;
    clamps_.fetch_add(1, std::memory_order_relaxed);
  }
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    if (region_owns(regions_[i], *point)) return i;
  }
  throw std::logic_error("locate: partition does not cover the point");
}

const Region& RegionSet::locate(const FeatureVector& x) const {
  return regions_[locate_index(x)];
}

double RegionSet::discrete_heuristic(const FeatureVector& x) const {
  return locate(x).p_hat;
}

void RegionSet::update_counts(std::span<const SamplePoint> points) {
  const std::size_t dims = bounds_.dims();
  std::vector<std::uint64_t> add_s(regions_.size(), 0);
  std::vector<std::uint64_t> add_m(regions_.size(), 0);
  std::vector<FeatureVector> sums(regions_.size(), FeatureVector(dims, 0.0));
  for (const SamplePoint& p : points) {
    const std::size_t i = locate_index(p.x);
    add_m[i] += 1;
    if (p.success) add_s[i] += 1;
    for (std::size_t a = 0; a < dims; ++a) sums[i][a] += p.x[a];
  }
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    if (add_m[i] == 0) continue;
    Region& r = regions_[i];
    const double old_m = static_cast<double>(r.total);
    const double new_m = static_cast<double>(r.total + add_m[i]);
    for (std::size_t a = 0; a < dims; ++a) {
      const double prior = r.total == 0 ? 0.0 : r.centroid[a] * old_m;
      r.centroid[a] = (prior + sums[i][a]) / new_m;
    }
    r.successes += add_s[i];
    r.total += add_m[i];
  }
}

void RegionSet::replace(std::size_t index, std::vector<Region> parts) {
  if (index >= regions_.size()) {
    throw std::invalid_argument("replace: region index out of range");
  }
  if (parts.empty()) {
    throw std::invalid_argument("replace: no replacement regions");
  }
  const Hyperrectangle old_box = regions_[index].box;
  for (const Region& part : parts) {
    if (!old_box.encloses(part.box)) {
      throw std::invalid_argument("replace: part leaves the old box");
    }
  }
  regions_.erase(regions_.begin() + static_cast<std::ptrdiff_t>(index));
  regions_.insert(regions_.begin() + static_cast<std::ptrdiff_t>(index),
                  parts.begin(), parts.end());
}

void RegionSet::validate() const {
  const std::size_t dims = bounds_.dims();
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const Region& r = regions_[i];
    if (r.box.dims() != dims) {
      throw std::invalid_argument("region " + std::to_string(i) + ": wrong dimension");
    }
    if (!bounds_.encloses(r.box)) {
      throw std::invalid_argument("region " + std::to_string(i) + ": outside bounds");
    }
    if (!(r.p_hat > 0.0 && r.p_hat <= 1.0) || !(r.e >= 1.0) ||
        r.successes > r.total) {
      throw std::invalid_argument("region " + std::to_string(i) + ": invalid estimate or counts");
    }
  }
  // Pairwise-disjoint interiors: strict overlap on every axis means overlap.
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    for (std::size_t j = i + 1; j < regions_.size(); ++j) {
      bool overlap = true;
      for (std::size_t a = 0; a < dims && overlap; ++a) {
        overlap = regions_[i].box.lo(a) < regions_[j].box.hi(a) &&
                  regions_[j].box.lo(a) < regions_[i].box.hi(a);
      }
      if (overlap && dims > 0) {
        throw std::invalid_argument("regions " + std::to_string(i) + " and " +
                                    std::to_string(j) + " overlap");
      }
    }
  }
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    if (locate_index(regions_[i].box.center()) != i) {
      throw std::invalid_argument("region " + std::to_string(i) +
                                  ": center routes elsewhere");
    }
  }
}

}  // namespace probe
