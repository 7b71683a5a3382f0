#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "probe/feature_space.hpp"

namespace probe {

inline constexpr int kBoardSide = 3;
inline constexpr int kBoardCells = kBoardSide * kBoardSide;
inline constexpr std::size_t kFeatureCount = 4;

/// An 8-puzzle board. tiles[cell] holds the tile at that cell, 0 is the blank.
struct State {
  std::array<std::uint8_t, kBoardCells> tiles{};

  bool operator==(const State&) const = default;

  /// Board packed into 36 bits, for hashing and duplicate detection.
  std::uint64_t key() const;

  int blank_cell() const;
};

/// True when tiles form a permutation of 0..8.
bool is_valid(const State& s);

/// The canonical goal layout 1 2 3 / 4 5 6 / 7 8 _.
State goal_state();

struct ProblemInstance {
  State start;
  State goal;
  int scramble_depth = 0;
  std::uint64_t seed = 0;

  bool operator==(const ProblemInstance&) const = default;
};

/// All states reachable by sliding one tile into the blank.
/// 2, 3 or 4 of them depending on the blank's cell.
std::vector<State> successors(const State& s);

bool is_goal(const State& s, const State& goal);

/// Feature map, all components small non-negative integers:
///   x1  total Manhattan distance of the tiles to their goal cells
///   x2  number of misplaced tiles
///   x3  number of adjacent tile pairs swapped relative to the goal
///   x4  Manhattan distance of the blank to its goal cell
FeatureVector features(const State& s, const State& goal);

/// A-priori bounds of the feature map over all boards:
/// [0,24] x [0,8] x [0,12] x [0,4].
const Hyperrectangle& feature_bounds();

/// Random walk of `depth` legal moves from the goal, never immediately
/// undoing the previous move. Deterministic in `seed`; depth 0 returns the
/// goal itself. The walk guarantees a solvable instance at controllable
/// difficulty.
ProblemInstance scramble(const State& goal, int depth, std::uint64_t seed);

/// Line format: nine start digits, nine goal digits, depth, seed.
std::string to_line(const ProblemInstance& instance);
ProblemInstance instance_from_line(const std::string& line);

}  // namespace probe
