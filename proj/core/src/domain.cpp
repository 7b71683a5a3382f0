#include "probe/domain.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "probe/rng.hpp"

namespace probe {

namespace {

// Orthogonal neighbors of each cell on the 3x3 board, ascending.
constexpr int kNeighbors[kBoardCells][4] = {
    {1, 3, -1, -1}, {0, 2, 4, -1}, {1, 5, -1, -1},
    {0, 4, 6, -1},  {1, 3, 5, 7},  {2, 4, 8, -1},
    {3, 7, -1, -1}, {4, 6, 8, -1}, {5, 7, -1, -1},
};

constexpr int kNeighborCount[kBoardCells] = {2, 3, 2, 3, 4, 3, 2, 3, 2};

int row_of(int cell) { return cell / kBoardSide; }
int col_of(int cell) { return cell % kBoardSide; }

int manhattan(int a, int b) {
  return std::abs(row_of(a) - row_of(b)) + std::abs(col_of(a) - col_of(b));
}

// cell_of_tile[t] = cell holding tile t.
std::array<int, kBoardCells> cell_of_tile(const State& s) {
  std::array<int, kBoardCells> where{};
  for (int cell = 0; cell < kBoardCells; ++cell) where[s.tiles[cell]] = cell;
  return where;
}

}  // namespace

std::uint64_t State::key() const {
  std::uint64_t k = 0;
  for (int cell = 0; cell < kBoardCells; ++cell) {
    k = (k << 4) | tiles[cell];
  }
  return k;
}

int State::blank_cell() const {
  for (int cell = 0; cell < kBoardCells; ++cell) {
    if (tiles[cell] == 0) return cell;
  }
  return -1;
}

bool is_valid(const State& s) {
  std::array<bool, kBoardCells> seen{};
  for (int cell = 0; cell < kBoardCells; ++cell) {
    if (s.tiles[cell] >= kBoardCells || seen[s.tiles[cell]]) return false;
    seen[s.tiles[cell]] = true;
  }
  return true;
}

State goal_state() {
  State g;
  for (int cell = 0; cell < kBoardCells; ++cell) {
    g.tiles[cell] = static_cast<std::uint8_t>((cell + 1) % kBoardCells);
  }
  return g;
}

std::vector<State> successors(const State& s) {
  const int blank = s.blank_cell();
  std::vector<State> out;
  out.reserve(kNeighborCount[blank]);
  for (int i = 0; i < kNeighborCount[blank]; ++i) {
    const int from = kNeighbors[blank][i];
    State next = s;
    next.tiles[blank] = s.tiles[from];
    next.tiles[from] = 0;
    out.push_back(next);
  }
  return out;
}

bool is_goal(const State& s, const State& goal) { return s == goal; }

FeatureVector features(const State& s, const State& goal) {
  const auto where_s = cell_of_tile(s);
  const auto where_g = cell_of_tile(goal);

  double total_distance = 0.0;
  double misplaced = 0.0;
  for (int tile = 1; tile < kBoardCells; ++tile) {
    const int d = manhattan(where_s[tile], where_g[tile]);
    total_distance += d;
    if (d > 0) misplaced += 1.0;
  }

  // Adjacent cell pairs holding two tiles in each other's goal cells.
  double reversals = 0.0;
  for (int cell = 0; cell < kBoardCells; ++cell) {
    for (int i = 0; i < kNeighborCount[cell]; ++i) {
      const int other = kNeighbors[cell][i];
      if (other < cell) continue;  // count each unordered pair once
      const std::uint8_t a = s.tiles[cell];
      const std::uint8_t b = s.tiles[other];
      if (a != 0 && b != 0 && a == goal.tiles[other] && b == goal.tiles[cell]) {
        reversals += 1.0;
      }
    }
  }

  const double blank_distance =
      manhattan(where_s[0], where_g[0]);
  return {total_distance, misplaced, reversals, blank_distance};
}

const Hyperrectangle& feature_bounds() {
  static const Hyperrectangle bounds({0.0, 0.0, 0.0, 0.0},
                                     {24.0, 8.0, 12.0, 4.0});
  return bounds;
}

ProblemInstance scramble(const State& goal, int depth, std::uint64_t seed) {
  if (depth < 0) throw std::invalid_argument("scramble: negative depth");
  SplitMix64 rng(seed);
  State current = goal;
  int blank = current.blank_cell();
  int previous_blank = -1;
  for (int step = 0; step < depth; ++step) {
    int candidates[4];
    int count = 0;
    for (int i = 0; i < kNeighborCount[blank]; ++i) {
      const int cell = kNeighbors[blank][i];
      if (cell != previous_blank) candidates[count++] = cell;
    }
    const int target = candidates[rng.next_below(count)];
    current.tiles[blank] = current.tiles[target];
    current.tiles[target] = 0;
    previous_blank = blank;
    blank = target;
  }
  return ProblemInstance{current, goal, depth, seed};
}

std::string to_line(const ProblemInstance& instance) {
  std::string line;
  line.reserve(32);
  for (int cell = 0; cell < kBoardCells; ++cell) {
    line += static_cast<char>('0' + instance.start.tiles[cell]);
  }
  line += ' ';
  for (int cell = 0; cell < kBoardCells; ++cell) {
    line += static_cast<char>('0' + instance.goal.tiles[cell]);
  }
  line += ' ';
  line += std::to_string(instance.scramble_depth);
  line += ' ';
  line += std::to_string(instance.seed);
  return line;
}

ProblemInstance instance_from_line(const std::string& line) {
  std::istringstream in(line);
  std::string start_digits, goal_digits;
  int depth = 0;
  std::uint64_t seed = 0;
  if (!(in >> start_digits >> goal_digits >> depth >> seed) ||
      start_digits.size() != kBoardCells || goal_digits.size() != kBoardCells) {
    throw std::invalid_argument("instance line: expected 'SSSSSSSSS GGGGGGGGG depth seed'");
  }
  ProblemInstance instance;
  for (int cell = 0; cell < kBoardCells; ++cell) {
    instance.start.tiles[cell] = static_cast<std::uint8_t>(start_digits[cell] - '0');
    instance.goal.tiles[cell] = static_cast<std::uint8_t>(goal_digits[cell] - '0');
  }
  instance.scramble_depth = depth;
  instance.seed = seed;
  if (!is_valid(instance.start) || !is_valid(instance.goal)) {
    throw std::invalid_argument("instance line: boards are not permutations of 0..8");
  }
  return instance;
}

}  // namespace probe
