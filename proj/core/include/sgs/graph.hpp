#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgs/sparse.hpp"

namespace sgs {

/// Undirected weighted edge with i < j and a nonzero weight.
struct SignedEdge {
  int i = 0;
  int j = 0;
  double w = 0.0;
};

/// Per-node color assignment in {+1, -1}; the two-coloring certificate
/// of balance.
using Coloring = std::vector<int>;

/// Immutable signed graph: node count, undirected nonzero-weight edges
/// stored once per pair, and per-node self-loop weights (default 0).
class SignedGraph {
 public:
  SignedGraph() = default;
  SignedGraph(int n, std::vector<SignedEdge> edges, std::vector<double> self_loops = {});

  int size() const { return n_; }
  const std::vector<SignedEdge>& edges() const { return edges_; }
  const std::vector<double>& self_loops() const { return self_loops_; }

  /// Neighbors of i with edge weights, sorted by neighbor index.
  const std::vector<std::pair<int, double>>& neighbors(int i) const {
    return adjacency_[static_cast<std::size_t>(i)];
  }

  bool has_edge(int i, int j) const;
  double edge_weight(int i, int j) const;  // 0 when absent

  /// Connected-component label per node, labels dense from 0 in order of
  /// first appearance.
  std::vector<int> component_labels() const;
  bool connected() const;

 private:
  int n_ = 0;
  std::vector<SignedEdge> edges_;
  std::vector<double> self_loops_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

/// L = D - W + diag(W): off-diagonal (i,j) is -W_ij, diagonal i is
/// sum_{j != i} W_ij + W_ii.
SparseSymMatrix generalized_laplacian(const SignedGraph& g);

/// Same with self-loops zeroed.
SparseSymMatrix combinatorial_laplacian(const SignedGraph& g);

/// x^T L x.
double glr(const SparseSymMatrix& l, const std::vector<double>& x);

/// Two-colors each connected component by BFS (root = lowest index node,
/// colored +1) and verifies every edge is consistent. Returns the coloring
/// when the graph is balanced, empty otherwise.
std::optional<Coloring> is_balanced(const SignedGraph& g);

/// beta_i * beta_j * sign(W_ij): +1 consistent, -1 inconsistent.
int edge_consistency(const SignedGraph& g, const Coloring& c, int i, int j);

/// Graph-level similarity transform by diag(beta): edge weights switch to
/// beta_i * beta_j * W_ij and self-loops absorb the degree difference, so
/// generalized_laplacian(result) = diag(beta) L diag(beta) exactly. With a
/// valid balance coloring the result is an all-positive graph with the
/// same spectrum and eigenvectors mapped entrywise by the coloring.
SignedGraph signed_switch(const SignedGraph& g, const Coloring& c);

struct BoundaryCondition {
  enum class Kind { NeumannMid, DirichletMid };
  Kind kind = Kind::NeumannMid;
  double weight = 0.0;  // external edge weight for DirichletMid, > 0

  static BoundaryCondition neumann() { return {Kind::NeumannMid, 0.0}; }
  static BoundaryCondition dirichlet(double w);
};

/// Path-graph generalized Laplacian of n nodes with the given n-1 positive
/// edge weights. A Dirichlet midpoint condition with external weight w adds
/// a self-loop of weight 2w at that boundary node; Neumann adds nothing.
SparseSymMatrix second_difference(int n, BoundaryCondition left, BoundaryCondition right,
                                  const std::vector<double>& weights);

/// Number of strong nodal domains of x: maximal connected subgraphs whose
/// internal edges all satisfy sign(x_i) sign(x_j) = sign(W_ij) and whose
/// nodes all have x_i != 0. Zero entries belong to no domain.
int nodal_domains(const SignedGraph& g, const std::vector<double>& x);

/// Maximally sign-smooth: sign(x_i) = sign(W_ij) sign(x_j) on every edge,
/// with no zero entry on any edge endpoint.
bool is_ms(const SignedGraph& g, const std::vector<double>& x);

/// Edge-list text format: header "n <count>", then one "i j w" line per
/// edge (0-based, i < j) and "i i w" lines for self-loops. Weights carry
/// 17 significant digits so round-trips are exact.
void write_edge_list(std::ostream& os, const SignedGraph& g);
SignedGraph read_edge_list(std::istream& is);
void write_edge_list_file(const std::string& path, const SignedGraph& g);
SignedGraph read_edge_list_file(const std::string& path);

}  // namespace sgs
