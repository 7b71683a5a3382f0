#include "probe/search.hpp"

#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "probe/io.hpp"

namespace probe {

namespace {

struct OpenEntry {
  double h;
  int index;  // generation index; doubles as the FIFO tie-break
};

struct DevelopLater {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.h != b.h) return a.h < b.h;  // max h first
    return a.index > b.index;          // then first-generated-first
  }
};

SearchTree run(const ProblemInstance& problem, const Evaluator* h,
               SearchBudget budget) {
  if (budget.max_developed < 1) {
    throw std::invalid_argument("search budget must allow at least one development");
  }

  SearchTree tree;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, DevelopLater> open;
  std::unordered_set<std::uint64_t> seen;
  int goal_index = -1;

  auto add_node = [&](const State& s, int parent) {
    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(SearchNode{s, parent, features(s, problem.goal),
                                    false, false});
    open.push(OpenEntry{h ? (*h)(s) : 0.0, index});
    seen.insert(s.key());
    if (is_goal(s, problem.goal)) goal_index = index;
  };

  add_node(problem.start, -1);

  while (!tree.nodes.empty()) {
    int next;
    if (goal_index >= 0) {
      // Solution completion takes precedence over both the h ordering and
      // the budget; in the worst corner this develops one node past it.
      next = goal_index;
    } else if (tree.developed_count >= budget.max_developed) {
      break;
    } else if (open.empty()) {
      break;
    } else {
      next = open.top().index;
      open.pop();
    }

    SearchNode& node = tree.nodes[next];
    node.developed = true;
    tree.development_order.push_back(next);
    ++tree.developed_count;

    if (next == goal_index) {
      tree.solved = true;
      tree.goal_index = next;
      break;
    }
    for (const State& succ : successors(node.state)) {
      if (!seen.contains(succ.key())) add_node(succ, next);
    }
  }

  if (tree.solved) {
    int length = 0;
    for (int i = tree.goal_index; tree.nodes[i].parent >= 0;
         i = tree.nodes[i].parent) {
      ++length;
    }
    tree.solution_length = length;
  }
  return tree;
}

}  // namespace

SearchTree best_first(const ProblemInstance& problem, const Evaluator& h,
                      SearchBudget budget) {
  if (!h) throw std::invalid_argument("best_first: evaluator is empty");
  return run(problem, &h, budget);
}

SearchTree breadth_first(const ProblemInstance& problem, SearchBudget budget) {
  return run(problem, nullptr, budget);
}

void mark_success(SearchTree& tree) {
  for (SearchNode& node : tree.nodes) node.on_solution_path = false;
  if (!tree.solved) return;
  for (int i = tree.goal_index; i >= 0; i = tree.nodes[i].parent) {
    tree.nodes[i].on_solution_path = true;
  }
}

void write_trace(const SearchTree& tree, std::ostream& out) {
  for (std::size_t i = 0; i < tree.development_order.size(); ++i) {
    const SearchNode& node = tree.nodes[tree.development_order[i]];
    out << i;
    for (double v : node.x) out << ' ' << format_double(v);
    out << ' ' << (node.on_solution_path ? 1 : 0) << '\n';
  }
}

}  // namespace probe
