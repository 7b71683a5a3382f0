#include "probe/feature_space.hpp"

#include <algorithm>
#include <stdexcept>

namespace probe {

Hyperrectangle::Hyperrectangle(FeatureVector lo, FeatureVector hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) {
    throw std::invalid_argument("hyperrectangle: lo/hi dimension mismatch");
  }
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (!(lo_[i] <= hi_[i])) {
      throw std::invalid_argument("hyperrectangle: interval not ordered");
    }
  }
}

bool Hyperrectangle::contains(const FeatureVector& x) const {
  if (x.size() != lo_.size()) return false;
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
  }
  return true;
}

bool Hyperrectangle::encloses(const Hyperrectangle& inner) const {
  if (inner.dims() != dims()) return false;
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (inner.lo_[i] < lo_[i] || inner.hi_[i] > hi_[i]) return false;
  }
  return true;
}

FeatureVector Hyperrectangle::center() const {
  FeatureVector c(lo_.size());
  for (std::size_t i = 0; i < lo_.size(); ++i) c[i] = (lo_[i] + hi_[i]) / 2.0;
  return c;
}

FeatureVector Hyperrectangle::clamp(FeatureVector x) const {
  for (std::size_t i = 0; i < lo_.size() && i < x.size(); ++i) {
    x[i] = std::clamp(x[i], lo_[i], hi_[i]);
  }
  return x;
}

double Hyperrectangle::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo_.size(); ++i) v *= hi_[i] - lo_[i];
  return v;
}

std::pair<Hyperrectangle, Hyperrectangle> Hyperrectangle::split(
    std::size_t axis, double threshold) const {
  if (axis >= dims() || !(lo_[axis] < threshold && threshold < hi_[axis])) {
    throw std::invalid_argument("hyperrectangle: split threshold outside interval");
  }
  FeatureVector left_hi = hi_;
  left_hi[axis] = threshold;
  FeatureVector right_lo = lo_;
  right_lo[axis] = threshold;
  return {Hyperrectangle(lo_, std::move(left_hi)),
          Hyperrectangle(std::move(right_lo), hi_)};
}

}  // namespace probe
