#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "probe/domain.hpp"
#include "probe/feature_space.hpp"

namespace probe {

struct SearchBudget {
  int max_developed = 1000;
};

struct SearchNode {
  State state;
  int parent = -1;  // index into SearchTree::nodes, -1 for the root
  FeatureVector x;
  bool developed = false;
  bool on_solution_path = false;
};

/// Full record of one search: every generated node (frontier included),
/// in generation order, with parent links forming a tree.
struct SearchTree {
  std::vector<SearchNode> nodes;
  std::vector<int> development_order;
  int developed_count = 0;
  bool solved = false;
  std::optional<int> solution_length;
  int goal_index = -1;
};

/// State evaluator; higher values are developed first.
using Evaluator = std::function<double(const State&)>;

/// Best-first search: repeatedly develops the open node with the highest h,
/// ties broken first-generated-first, until the goal is developed or the
/// budget runs out. Previously generated states are never re-added.
///
/// A generated goal is always developed, even when the budget has just run
/// out, so a tree that reached the goal is never reported unsolved; in that
/// one corner developed_count can reach max_developed + 1.
SearchTree best_first(const ProblemInstance& problem, const Evaluator& h,
                      SearchBudget budget);

/// FIFO development order; otherwise identical to best_first. Equals
/// best_first under a constant evaluator.
SearchTree breadth_first(const ProblemInstance& problem, SearchBudget budget);

/// Labels the root-to-goal chain of a solved tree; all other labels false.
/// Unsolved trees come out with no labels set.
void mark_success(SearchTree& tree);

/// Debug/oracle surface: one developed node per line —
/// development index, feature vector, success flag.
void write_trace(const SearchTree& tree, std::ostream& out);

}  // namespace probe
