// Independent reference implementations used to cross-check the library.
// Everything here is deliberately written from the contract, not from the
// library code, and stays brute-force where possible.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "probe/domain.hpp"
#include "probe/estimate.hpp"
#include "probe/feature_space.hpp"
#include "probe/knowledge.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// 8-puzzle

// Shortest distance between two boards by plain bidirectionless BFS.
inline int puzzle_distance(const probe::State& from, const probe::State& to) {
  if (from == to) return 0;
  std::deque<std::pair<probe::State, int>> queue{{from, 0}};
  std::set<std::uint64_t> seen{from.key()};
  while (!queue.empty()) {
    auto [state, dist] = queue.front();
    queue.pop_front();
    for (const probe::State& next : probe::successors(state)) {
      if (next == to) return dist + 1;
      if (seen.insert(next.key()).second) queue.emplace_back(next, dist + 1);
    }
  }
  return -1;
}

// Feature recomputation by exhaustive per-tile scan.
inline probe::FeatureVector puzzle_features(const probe::State& s,
                                            const probe::State& goal) {
  auto find_tile = [](const probe::State& st, int tile) {
    for (int cell = 0; cell < 9; ++cell) {
      if (st.tiles[cell] == tile) return cell;
    }
    return -1;
  };
  auto dist = [](int a, int b) {
    return std::abs(a / 3 - b / 3) + std::abs(a % 3 - b % 3);
  };
  double x1 = 0, x2 = 0, x3 = 0;
  for (int tile = 1; tile < 9; ++tile) {
    const int d = dist(find_tile(s, tile), find_tile(goal, tile));
    x1 += d;
    if (d > 0) x2 += 1;
  }
  // Reversed adjacent pairs: scan every horizontally/vertically adjacent
  // cell pair.
  for (int cell = 0; cell < 9; ++cell) {
    const int row = cell / 3, col = cell % 3;
    for (const int other : {cell + 1, cell + 3}) {
      if (other >= 9) continue;
      if (other == cell + 1 && other / 3 != row) continue;
      (void)col;
      const int a = s.tiles[cell], b = s.tiles[other];
      if (a != 0 && b != 0 && a == goal.tiles[other] && b == goal.tiles[cell]) {
        x3 += 1;
      }
    }
  }
  const double x4 = dist(find_tile(s, 0), find_tile(goal, 0));
  return {x1, x2, x3, x4};
}

// Budgeted breadth-first development replay: FIFO order, duplicates skipped,
// a generated goal always developed. Returns the developed nodes in order,
// with their solution-path labels.
struct BfsNode {
  probe::State state;
  int parent;
  bool developed = false;
  bool on_path = false;
};

struct BfsReplay {
  std::vector<BfsNode> nodes;
  std::vector<int> development_order;
  bool solved = false;
  int goal_index = -1;
};

inline BfsReplay budgeted_bfs(const probe::ProblemInstance& problem, int budget) {
  BfsReplay replay;
  std::set<std::uint64_t> seen;
  std::deque<int> open;
  int goal_pending = -1;

  auto add = [&](const probe::State& s, int parent) {
    replay.nodes.push_back(BfsNode{s, parent});
    open.push_back(static_cast<int>(replay.nodes.size()) - 1);
    seen.insert(s.key());
    if (s == problem.goal) goal_pending = static_cast<int>(replay.nodes.size()) - 1;
  };
  add(problem.start, -1);

  int developed = 0;
  while (true) {
    int next;
    if (goal_pending >= 0) {
      next = goal_pending;
    } else if (developed >= budget || open.empty()) {
      break;
    } else {
      next = open.front();
      open.pop_front();
    }
    replay.nodes[next].developed = true;
    replay.development_order.push_back(next);
    ++developed;
    if (next == goal_pending) {
      replay.solved = true;
      replay.goal_index = next;
      break;
    }
    for (const probe::State& succ : probe::successors(replay.nodes[next].state)) {
      if (!seen.contains(succ.key())) add(succ, next);
    }
  }
  if (replay.solved) {
    for (int i = replay.goal_index; i >= 0; i = replay.nodes[i].parent) {
      replay.nodes[i].on_path = true;
    }
  }
  return replay;
}

// ---------------------------------------------------------------------------
// Region membership and partition checks

// Half-open ownership: low edges belong to the left neighbor except on the
// outer boundary.
inline bool owns(const probe::Hyperrectangle& box,
                 const probe::Hyperrectangle& bounds,
                 const probe::FeatureVector& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > box.hi(i)) return false;
    if (x[i] < box.lo(i)) return false;
    if (x[i] == box.lo(i) && box.lo(i) != bounds.lo(i)) return false;
  }
  return true;
}

// Counts the regions owning x; a valid partition yields exactly 1 for every
// x in bounds.
inline int owners(const probe::RegionSet& rs, const probe::FeatureVector& x) {
  int count = 0;
  for (const probe::Region& r : rs.regions()) {
    if (owns(r.box, rs.feature_bounds(), x)) ++count;
  }
  return count;
}

// Disjointness + coverage by random samples plus every region corner.
// Returns the number of violations (points not owned exactly once).
inline int partition_violations(const probe::RegionSet& rs, int samples,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& bounds = rs.feature_bounds();
  int violations = 0;
  for (int i = 0; i < samples; ++i) {
    probe::FeatureVector x(bounds.dims());
    for (std::size_t a = 0; a < bounds.dims(); ++a) {
      std::uniform_real_distribution<double> u(bounds.lo(a), bounds.hi(a));
      x[a] = u(rng);
    }
    if (owners(rs, x) != 1) ++violations;
  }
  for (const probe::Region& r : rs.regions()) {
    const std::size_t dims = r.box.dims();
    for (std::size_t mask = 0; mask < (std::size_t{1} << dims); ++mask) {
      probe::FeatureVector corner(dims);
      for (std::size_t a = 0; a < dims; ++a) {
        corner[a] = (mask >> a) & 1 ? r.box.hi(a) : r.box.lo(a);
      }
      if (owners(rs, corner) != 1) ++violations;
    }
  }
  return violations;
}

// ---------------------------------------------------------------------------
// Splitting

// Exhaustive re-derivation of the best split: all axes, all midpoints of
// consecutive distinct values, smoothing and dissimilarity straight from the
// formulas, ties to the lowest axis then lowest threshold.
struct SplitChoice {
  std::size_t axis;
  double threshold;
  double d;
  std::uint64_t left_s, left_m, right_s, right_m;
};

inline std::optional<SplitChoice> exhaustive_best_split(
    const std::vector<probe::SamplePoint>& points,
    const probe::EstimatorConfig& cfg) {
  const std::size_t min_count = static_cast<std::size_t>(cfg.min_cell_count);
  if (points.size() < 2 * min_count) return std::nullopt;
  const std::size_t dims = points.front().x.size();

  auto smoothed = [&](double s, double m) {
    const double p = (s + cfg.laplace_a) / (m + cfg.laplace_b);
    const double log_e = cfg.z * std::sqrt((1.0 - p) / (p * (m + cfg.laplace_b)));
    return std::pair<double, double>{p, std::exp(log_e)};
  };

  std::optional<SplitChoice> best;
  for (std::size_t axis = 0; axis < dims; ++axis) {
    std::vector<double> values;
    for (const auto& p : points) values.push_back(p.x[axis]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      const double threshold = (values[i] + values[i + 1]) / 2.0;
      std::uint64_t ls = 0, lm = 0, rs = 0, rm = 0;
      for (const auto& p : points) {
        if (p.x[axis] <= threshold) {
          ++lm;
          if (p.success) ++ls;
        } else {
          ++rm;
          if (p.success) ++rs;
        }
      }
      if (lm < min_count || rm < min_count) continue;
      const auto [p1, e1] = smoothed(static_cast<double>(ls), static_cast<double>(lm));
      const auto [p2, e2] = smoothed(static_cast<double>(rs), static_cast<double>(rm));
      const double d = std::fabs(std::log(p1) - std::log(p2)) - std::log(e1 * e2);
      if (!best || d > best->d) best = SplitChoice{axis, threshold, d, ls, lm, rs, rm};
    }
  }
  if (best && best->d > 0.0) return best;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Weighted least squares, closed form

// Solves the weighted normal equations for the given columns (0 = intercept)
// by Gauss-Jordan with full row normalization; independent of the library's
// elimination.
inline std::optional<std::vector<double>> closed_form_wls(
    const std::vector<std::vector<double>>& xs, const std::vector<double>& ys,
    const std::vector<double>& ws, const std::vector<std::size_t>& features) {
  const std::size_t k = features.size() + 1;
  std::vector<std::vector<double>> aug(k, std::vector<double>(k + 1, 0.0));
  auto col = [&](std::size_t row, std::size_t j) {
    return j == 0 ? 1.0 : xs[row][features[j - 1]];
  };
  for (std::size_t r = 0; r < xs.size(); ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        aug[i][j] += ws[r] * col(r, i) * col(r, j);
      }
      aug[i][k] += ws[r] * col(r, i) * ys[r];
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t pivot = i;
    for (std::size_t r = i + 1; r < k; ++r) {
      if (std::fabs(aug[r][i]) > std::fabs(aug[pivot][i])) pivot = r;
    }
    if (std::fabs(aug[pivot][i]) < 1e-10) return std::nullopt;
    std::swap(aug[i], aug[pivot]);
    const double scale = aug[i][i];
    for (double& v : aug[i]) v /= scale;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == i) continue;
      const double factor = aug[r][i];
      for (std::size_t c = 0; c <= k; ++c) aug[r][c] -= factor * aug[i][c];
    }
  }
  std::vector<double> solution(k);
  for (std::size_t i = 0; i < k; ++i) solution[i] = aug[i][k];
  return solution;
}

}  // namespace oracle
