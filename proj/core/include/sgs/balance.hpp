#pragma once

#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "sgs/graph.hpp"

namespace sgs {

/// How an inconsistent negative edge was resolved: Case1 removes it against
/// two previously removed positive edges, Case2 removes it after augmenting
/// two triangle edges, SameColor keeps it and recolors the incoming node.
enum class NegativeEdgeCase { Case1, Case2, SameColor };

struct BalanceReport {
  std::vector<SignedEdge> removed_positive;

  struct RemovedNegative {
    int i = 0;
    int j = 0;
    double w = 0.0;
    NegativeEdgeCase kind = NegativeEdgeCase::Case1;
  };
  std::vector<RemovedNegative> removed_negative;

  struct Augmented {
    int i = 0;
    int j = 0;
    double old_w = 0.0;
    double new_w = 0.0;
  };
  std::vector<Augmented> augmented;

  int iterations = 0;
};

/// Case-2 helper choice: picks the anchor node among the opposite-color set.
/// Default picks the smallest index, which keeps runs deterministic.
using OppositeColorPolicy = std::function<int(const std::vector<int>& candidates)>;

/// Called after every single edge removal or weight update with a snapshot
/// of the working graph; only used by instrumented runs at small scale.
using BalanceObserver = std::function<void(const SignedGraph& working)>;

/// Mutable state of one greedy balancing run. balance() drives it; the
/// individual steps are exposed so they can be unit-tested in isolation.
class BalanceState {
 public:
  BalanceState(const SignedGraph& g, int seed_node, OppositeColorPolicy policy = {},
               BalanceObserver observer = {});

  bool frontier_empty() const { return frontier_size_ == 0; }

  /// Largest-|W| edge (j*, i*) between the frontier and the colored set;
  /// ties broken by smaller j, then smaller i.
  std::pair<int, int> select_next();

  /// Colors j consistently with its anchor edge (j, anchor).
  void assign_color(int j, int anchor);

  /// Removes every positive edge from j into S that is inconsistent under
  /// the current coloring; removed edges are recorded in the deleted-edge
  /// graph for later Case-1 use.
  std::vector<SignedEdge> remove_inconsistent_positive(int j);

  /// Attempts the removed-positive-pair rule on the inconsistent negative
  /// edge (j, i). On success the edge is removed, the two positive edges
  /// are consumed, and true is returned; on failure nothing changes.
  bool try_case1(int j, int i);

  struct Case2Outcome {
    bool recolored = false;                            // monochromatic fallback fired
    int anchor = -1;                                   // opposite-color node used
    std::vector<BalanceReport::Augmented> updates;
    std::vector<SignedEdge> removed_positive;          // removals from the recolor path
  };

  /// Removes the inconsistent negative edge (j, i) by augmenting the two
  /// triangle edges through an opposite-color node, or, if the colored set
  /// is monochromatic, recolors j and removes its now-inconsistent positive
  /// edges instead (no negative edge is removed on that path).
  Case2Outcome case2_remove(int j, int i);

  /// Inconsistent negative edges from j into S, cheapest |W| first.
  std::vector<std::pair<int, int>> pending_inconsistent_negative(int j) const;

  /// Moves j into S and refreshes the frontier.
  void commit(int j);

  const std::vector<int>& colors() const { return color_; }
  bool in_colored_set(int node) const { return in_s_[static_cast<std::size_t>(node)]; }
  SignedGraph working_graph() const;
  BalanceReport& report() { return report_; }

 private:
  struct FrontierEntry {
    double magnitude;
    int node;
    int anchor;
    bool operator<(const FrontierEntry& other) const {
      if (magnitude != other.magnitude) return magnitude < other.magnitude;
      if (node != other.node) return node > other.node;
      return anchor > other.anchor;
    }
  };

  double weight(int i, int j) const;
  void set_weight(int i, int j, double w);
  void erase_edge(int i, int j);
  void notify() const;
  void relax_frontier_edges_of(int added);

  int n_ = 0;
  std::vector<std::map<int, double>> adj_;      // working graph
  std::vector<std::map<int, double>> deleted_;  // removed positive edges, removal-time weights
  std::vector<double> self_loops_;
  std::vector<int> color_;                      // 0 = unassigned
  std::vector<char> in_s_;
  std::vector<int> s_by_color_[2];              // members of S, blue (+1) then red (-1)
  std::vector<double> best_magnitude_;
  std::vector<int> best_anchor_;
  std::priority_queue<FrontierEntry> frontier_;
  int frontier_size_ = 0;
  OppositeColorPolicy policy_;
  BalanceObserver observer_;
  BalanceReport report_;
};

struct BalanceResult {
  SignedGraph graph;
  Coloring coloring;
  BalanceReport report;
};

/// Greedy balancing of a connected signed graph. The result is balanced,
/// keeps the input's self-loops, keeps the sign of every surviving edge,
/// and satisfies L - L_B >= 0 for the combinatorial Laplacians.
BalanceResult balance(const SignedGraph& g, int seed_node = 0, OppositeColorPolicy policy = {},
                      BalanceObserver observer = {});

/// Per-component balancing for possibly disconnected graphs. The component
/// containing seed_node starts there; every other component starts at its
/// lowest-index node.
BalanceResult balance_components(const SignedGraph& g, int seed_node = 0,
                                 OppositeColorPolicy policy = {});

}  // namespace sgs
