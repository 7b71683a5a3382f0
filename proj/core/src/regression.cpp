#include "probe/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace probe {

double weight_of(const Region& region) {
  if (!(region.e >= 1.0)) {
    throw std::invalid_argument("weight_of: error factor must be >= 1");
  }
  if (region.e == 1.0) return std::numeric_limits<double>::infinity();
  const double log_e = std::log(region.e);
  return 1.0 / (log_e * log_e);
}

std::vector<RegressionDatum> regression_data(std::span<const Region> regions) {
  std::vector<RegressionDatum> data;
  double max_finite = 0.0;
  for (const Region& r : regions) {
    if (r.total == 0) continue;
    const double w = weight_of(r);
    if (std::isfinite(w)) max_finite = std::max(max_finite, w);
    data.push_back(RegressionDatum{r.centroid, r.p_hat, w});
  }
  // Exact estimates outweigh everything measured, by an order of magnitude.
  const double exact_weight = max_finite > 0.0 ? 10.0 * max_finite : 10.0;
  for (RegressionDatum& d : data) {
    if (!std::isfinite(d.w)) d.w = exact_weight;
  }
  return data;
}

namespace {

// Solves A b = rhs in place by Gaussian elimination with partial pivoting.
// Returns false when the matrix is numerically singular.
bool solve_linear_system(std::vector<std::vector<double>>& a,
                         std::vector<double>& rhs, std::vector<double>& out) {
  const std::size_t n = rhs.size();
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(a[i][i]));
  const double pivot_floor = 1e-12 * scale;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
    }
    if (std::fabs(a[pivot][col]) < pivot_floor) return false;
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = a[row][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      rhs[row] -= factor * rhs[col];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t row = n; row-- > 0;) {
    double v = rhs[row];
    for (std::size_t k = row + 1; k < n; ++k) v -= a[row][k] * out[k];
    out[row] = v / a[row][row];
  }
  return true;
}

// Weighted least squares over the columns {intercept} + features, by normal
// equations. Returns the weighted RSS, or nothing when the design is singular.
std::optional<double> wls(std::span<const RegressionDatum> data,
                          const std::vector<std::size_t>& features,
                          std::vector<double>& coeffs) {
  const std::size_t k = features.size() + 1;
  std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
  std::vector<double> aty(k, 0.0);
  auto column = [&](const RegressionDatum& d, std::size_t j) {
    return j == 0 ? 1.0 : d.x[features[j - 1]];
  };
  for (const RegressionDatum& d : data) {
    for (std::size_t i = 0; i < k; ++i) {
      const double ci = column(d, i);
      aty[i] += d.w * ci * d.y;
      for (std::size_t j = i; j < k; ++j) {
        ata[i][j] += d.w * ci * column(d, j);
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) ata[i][j] = ata[j][i];
  }
  if (!solve_linear_system(ata, aty, coeffs)) return std::nullopt;

  double rss = 0.0;
  for (const RegressionDatum& d : data) {
    double predicted = coeffs[0];
    for (std::size_t j = 1; j < k; ++j) predicted += coeffs[j] * column(d, j);
    const double r = d.y - predicted;
    rss += d.w * r * r;
  }
  return rss;
}

}  // namespace

LinearHeuristic fit(std::span<const RegressionDatum> data, double tolerance) {
  if (data.size() < 2) {
    throw std::invalid_argument("fit: need at least 2 data");
  }
  const std::size_t n_features = data.front().x.size();
  for (const RegressionDatum& d : data) {
    if (d.x.size() != n_features) {
      throw std::invalid_argument("fit: inconsistent feature dimensions");
    }
    if (!(d.w > 0.0)) throw std::invalid_argument("fit: weights must be positive");
  }

  LinearHeuristic h;
  h.coefficients.assign(n_features + 1, 0.0);

  std::vector<std::size_t> included;
  std::vector<double> coeffs;
  double current_rss = *wls(data, included, coeffs);  // intercept never singular
  h.coefficients[0] = coeffs[0];

  while (included.size() < n_features) {
    // Adding a feature needs one more parameter than we have data for? Stop.
    if (data.size() < included.size() + 2) break;

    std::optional<std::size_t> best_feature;
    double best_rss = 0.0;
    std::vector<double> best_coeffs;
    for (std::size_t j = 0; j < n_features; ++j) {
      if (std::find(included.begin(), included.end(), j) != included.end()) {
        continue;
      }
      std::vector<std::size_t> trial = included;
      trial.push_back(j);
      std::vector<double> trial_coeffs;
      const std::optional<double> rss = wls(data, trial, trial_coeffs);
      if (!rss) {
        ++h.rank_deficient_skips;
        continue;
      }
      if (!best_feature || *rss < best_rss) {
        best_feature = j;
        best_rss = *rss;
        best_coeffs = std::move(trial_coeffs);
      }
    }
    if (!best_feature) break;
    if (current_rss <= 0.0) break;  // already interpolating
    const double relative_reduction = (current_rss - best_rss) / current_rss;
    if (relative_reduction < tolerance) break;

    included.push_back(*best_feature);
    current_rss = best_rss;
    std::fill(h.coefficients.begin(), h.coefficients.end(), 0.0);
    h.coefficients[0] = best_coeffs[0];
    for (std::size_t j = 0; j < included.size(); ++j) {
      h.coefficients[included[j] + 1] = best_coeffs[j + 1];
    }
  }

  h.included = included;
  std::sort(h.included.begin(), h.included.end());
  return h;
}

double linear_eval(const LinearHeuristic& h, const FeatureVector& x) {
  if (h.coefficients.size() != x.size() + 1) {
    throw std::invalid_argument("linear_eval: dimension mismatch");
  }
  double v = h.coefficients[0];
  for (std::size_t i = 0; i < x.size(); ++i) v += h.coefficients[i + 1] * x[i];
  return v;
}

}  // namespace probe
