#include "sgs/balance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sgs {

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

int color_slot(int color) { return color > 0 ? 0 : 1; }

}  // namespace

BalanceState::BalanceState(const SignedGraph& g, int seed_node, OppositeColorPolicy policy,
                           BalanceObserver observer)
    : n_(g.size()),
      adj_(static_cast<std::size_t>(g.size())),
      deleted_(static_cast<std::size_t>(g.size())),
      self_loops_(g.self_loops()),
      color_(static_cast<std::size_t>(g.size()), 0),
      in_s_(static_cast<std::size_t>(g.size()), 0),
      best_magnitude_(static_cast<std::size_t>(g.size()), -1.0),
      best_anchor_(static_cast<std::size_t>(g.size()), -1),
      policy_(std::move(policy)),
      observer_(std::move(observer)) {
  if (n_ <= 0) throw std::invalid_argument("balance: graph has no nodes");
  if (seed_node < 0 || seed_node >= n_) throw std::invalid_argument("balance: seed out of range");
  for (const auto& e : g.edges()) {
    adj_[static_cast<std::size_t>(e.i)][e.j] = e.w;
    adj_[static_cast<std::size_t>(e.j)][e.i] = e.w;
  }
  color_[static_cast<std::size_t>(seed_node)] = 1;
  in_s_[static_cast<std::size_t>(seed_node)] = 1;
  s_by_color_[0].push_back(seed_node);
  relax_frontier_edges_of(seed_node);
}

double BalanceState::weight(int i, int j) const {
  const auto& row = adj_[static_cast<std::size_t>(i)];
  auto it = row.find(j);
  return it == row.end() ? 0.0 : it->second;
}

void BalanceState::set_weight(int i, int j, double w) {
  if (w == 0.0) {
    erase_edge(i, j);
    return;
  }
  adj_[static_cast<std::size_t>(i)][j] = w;
  adj_[static_cast<std::size_t>(j)][i] = w;
}

void BalanceState::erase_edge(int i, int j) {
  adj_[static_cast<std::size_t>(i)].erase(j);
  adj_[static_cast<std::size_t>(j)].erase(i);
}

void BalanceState::notify() const {
  if (observer_) observer_(working_graph());
}

void BalanceState::relax_frontier_edges_of(int added) {
  for (const auto& [v, w] : adj_[static_cast<std::size_t>(added)]) {
    if (in_s_[static_cast<std::size_t>(v)]) continue;
    double magnitude = std::abs(w);
    auto idx = static_cast<std::size_t>(v);
    if (best_magnitude_[idx] < 0.0) ++frontier_size_;
    if (magnitude > best_magnitude_[idx] ||
        (magnitude == best_magnitude_[idx] && added < best_anchor_[idx])) {
      best_magnitude_[idx] = magnitude;
      best_anchor_[idx] = added;
      frontier_.push({magnitude, v, added});
    }
  }
}

std::pair<int, int> BalanceState::select_next() {
  while (!frontier_.empty()) {
    FrontierEntry top = frontier_.top();
    auto idx = static_cast<std::size_t>(top.node);
    if (!in_s_[idx] && best_magnitude_[idx] == top.magnitude && best_anchor_[idx] == top.anchor)
      return {top.node, top.anchor};
    frontier_.pop();
  }
  throw std::logic_error("balance: empty frontier");
}

void BalanceState::assign_color(int j, int anchor) {
  double w = weight(j, anchor);
  color_[static_cast<std::size_t>(j)] = sign_of(w) * color_[static_cast<std::size_t>(anchor)];
}

std::vector<SignedEdge> BalanceState::remove_inconsistent_positive(int j) {
  std::vector<std::pair<int, double>> targets;
  for (const auto& [v, w] : adj_[static_cast<std::size_t>(j)]) {
    if (!in_s_[static_cast<std::size_t>(v)]) continue;
    if (w > 0.0 && color_[static_cast<std::size_t>(j)] * color_[static_cast<std::size_t>(v)] < 0)
      targets.push_back({v, w});
  }
  std::vector<SignedEdge> removed;
  removed.reserve(targets.size());
  for (const auto& [v, w] : targets) {
    erase_edge(j, v);
    deleted_[static_cast<std::size_t>(j)][v] = w;
    deleted_[static_cast<std::size_t>(v)][j] = w;
    SignedEdge e{std::min(j, v), std::max(j, v), w};
    removed.push_back(e);
    report_.removed_positive.push_back(e);
    notify();
  }
  return removed;
}

std::vector<std::pair<int, int>> BalanceState::pending_inconsistent_negative(int j) const {
  std::vector<std::pair<double, int>> order;
  for (const auto& [v, w] : adj_[static_cast<std::size_t>(j)]) {
    if (!in_s_[static_cast<std::size_t>(v)]) continue;
    if (w < 0.0 && color_[static_cast<std::size_t>(j)] * color_[static_cast<std::size_t>(v)] > 0)
      order.push_back({std::abs(w), v});
  }
  std::sort(order.begin(), order.end());
  std::vector<std::pair<int, int>> pending;
  pending.reserve(order.size());
  for (const auto& [mag, v] : order) pending.push_back({j, v});
  return pending;
}

bool BalanceState::try_case1(int j, int i) {
  double w_ji = weight(j, i);
  const auto& from_j = deleted_[static_cast<std::size_t>(j)];
  const auto& from_i = deleted_[static_cast<std::size_t>(i)];
  for (const auto& [k, w_kj] : from_j) {
    auto it = from_i.find(k);
    if (it == from_i.end()) continue;
    double w_ki = it->second;
    if (w_kj >= -2.0 * w_ji && w_ki >= -2.0 * w_ji) {
      erase_edge(j, i);
      deleted_[static_cast<std::size_t>(j)].erase(k);
      deleted_[static_cast<std::size_t>(i)].erase(k);
      deleted_[static_cast<std::size_t>(k)].erase(j);
      deleted_[static_cast<std::size_t>(k)].erase(i);
      report_.removed_negative.push_back(
          {std::min(j, i), std::max(j, i), w_ji, NegativeEdgeCase::Case1});
      notify();
      return true;
    }
  }
  return false;
}

BalanceState::Case2Outcome BalanceState::case2_remove(int j, int i) {
  Case2Outcome outcome;
  double w_ji = weight(j, i);
  int opposite = -color_[static_cast<std::size_t>(j)];
  const auto& candidates = s_by_color_[color_slot(opposite)];

  if (candidates.empty()) {
    // Monochromatic colored set: flip j instead; every negative edge into S
    // becomes consistent and every positive one must go.
    color_[static_cast<std::size_t>(j)] = opposite;
    outcome.recolored = true;
    outcome.removed_positive = remove_inconsistent_positive(j);
    report_.removed_negative.push_back(
        {std::min(j, i), std::max(j, i), w_ji, NegativeEdgeCase::SameColor});
    return outcome;
  }

  int k;
  if (policy_) {
    std::vector<int> sorted = candidates;
    std::sort(sorted.begin(), sorted.end());
    k = policy_(sorted);
  } else {
    k = *std::min_element(candidates.begin(), candidates.end());
  }
  outcome.anchor = k;

  for (int endpoint : {j, i}) {
    double old_w = weight(k, endpoint);
    double new_w = old_w + 2.0 * w_ji;
    set_weight(k, endpoint, new_w);
    BalanceReport::Augmented entry{std::min(k, endpoint), std::max(k, endpoint), old_w, new_w};
    outcome.updates.push_back(entry);
    report_.augmented.push_back(entry);
    notify();
  }
  erase_edge(j, i);
  report_.removed_negative.push_back(
      {std::min(j, i), std::max(j, i), w_ji, NegativeEdgeCase::Case2});
  notify();
  return outcome;
}

void BalanceState::commit(int j) {
  auto idx = static_cast<std::size_t>(j);
  in_s_[idx] = 1;
  s_by_color_[color_slot(color_[idx])].push_back(j);
  --frontier_size_;
  ++report_.iterations;
  relax_frontier_edges_of(j);
}

SignedGraph BalanceState::working_graph() const {
  std::vector<SignedEdge> edges;
  for (int i = 0; i < n_; ++i)
    for (const auto& [v, w] : adj_[static_cast<std::size_t>(i)])
      if (v > i) edges.push_back({i, v, w});
  return SignedGraph(n_, std::move(edges), self_loops_);
}

BalanceResult balance(const SignedGraph& g, int seed_node, OppositeColorPolicy policy,
                      BalanceObserver observer) {
  if (g.size() <= 0) throw std::invalid_argument("balance: graph has no nodes");
  if (!g.connected())
    throw std::invalid_argument("balance: input graph is disconnected, split per component");

  BalanceState state(g, seed_node, std::move(policy), std::move(observer));
  while (!state.frontier_empty()) {
    auto [j, anchor] = state.select_next();
    state.assign_color(j, anchor);
    state.remove_inconsistent_positive(j);
    for (;;) {
      auto pending = state.pending_inconsistent_negative(j);
      if (pending.empty()) break;
      auto [pj, pi] = pending.front();
      if (!state.try_case1(pj, pi)) {
        auto outcome = state.case2_remove(pj, pi);
        if (outcome.recolored) break;  // everything left is consistent now
      }
    }
    state.commit(j);
  }
  return {state.working_graph(), state.colors(), std::move(state.report())};
}

BalanceResult balance_components(const SignedGraph& g, int seed_node,
                                 OppositeColorPolicy policy) {
  if (g.size() <= 0) throw std::invalid_argument("balance: graph has no nodes");
  if (seed_node < 0 || seed_node >= g.size())
    throw std::invalid_argument("balance: seed out of range");
  auto labels = g.component_labels();
  int components = *std::max_element(labels.begin(), labels.end()) + 1;
  if (components == 1) return balance(g, seed_node, policy);

  std::vector<std::vector<int>> members(static_cast<std::size_t>(components));
  for (int v = 0; v < g.size(); ++v)
    members[static_cast<std::size_t>(labels[static_cast<std::size_t>(v)])].push_back(v);

  std::vector<SignedEdge> merged_edges;
  Coloring merged_coloring(static_cast<std::size_t>(g.size()), 1);
  BalanceReport merged_report;
  std::vector<double> loops = g.self_loops();

  for (int c = 0; c < components; ++c) {
    const auto& nodes = members[static_cast<std::size_t>(c)];
    std::vector<int> global_of(nodes.begin(), nodes.end());
    std::vector<int> local_of(static_cast<std::size_t>(g.size()), -1);
    for (std::size_t l = 0; l < nodes.size(); ++l)
      local_of[static_cast<std::size_t>(nodes[l])] = static_cast<int>(l);

    std::vector<SignedEdge> local_edges;
    for (const auto& e : g.edges())
      if (labels[static_cast<std::size_t>(e.i)] == c)
        local_edges.push_back({local_of[static_cast<std::size_t>(e.i)],
                               local_of[static_cast<std::size_t>(e.j)], e.w});
    std::vector<double> local_loops;
    local_loops.reserve(nodes.size());
    for (int v : nodes) local_loops.push_back(loops[static_cast<std::size_t>(v)]);

    int local_seed = labels[static_cast<std::size_t>(seed_node)] == c
                         ? local_of[static_cast<std::size_t>(seed_node)]
                         : 0;
    SignedGraph sub(static_cast<int>(nodes.size()), std::move(local_edges),
                    std::move(local_loops));
    BalanceResult part = balance(sub, local_seed, policy);

    for (const auto& e : part.graph.edges())
      merged_edges.push_back({global_of[static_cast<std::size_t>(e.i)],
                              global_of[static_cast<std::size_t>(e.j)], e.w});
    for (std::size_t l = 0; l < nodes.size(); ++l)
      merged_coloring[static_cast<std::size_t>(nodes[l])] = part.coloring[l];
    for (const auto& e : part.report.removed_positive)
      merged_report.removed_positive.push_back({global_of[static_cast<std::size_t>(e.i)],
                                                global_of[static_cast<std::size_t>(e.j)], e.w});
    for (const auto& e : part.report.removed_negative)
      merged_report.removed_negative.push_back({global_of[static_cast<std::size_t>(e.i)],
                                                global_of[static_cast<std::size_t>(e.j)], e.w,
                                                e.kind});
    for (const auto& e : part.report.augmented)
      merged_report.augmented.push_back({global_of[static_cast<std::size_t>(e.i)],
                                         global_of[static_cast<std::size_t>(e.j)], e.old_w,
                                         e.new_w});
    merged_report.iterations += part.report.iterations;
  }
  return {SignedGraph(g.size(), std::move(merged_edges), std::move(loops)),
          std::move(merged_coloring), std::move(merged_report)};
}

}  // namespace sgs
