#include "sgs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sgs {

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Union-find with path halving.
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

SignedGraph::SignedGraph(int n, std::vector<SignedEdge> edges, std::vector<double> self_loops)
    : n_(n), edges_(std::move(edges)), self_loops_(std::move(self_loops)) {
  if (n_ < 0) throw std::invalid_argument("SignedGraph: negative node count");
  if (self_loops_.empty()) self_loops_.assign(static_cast<std::size_t>(n_), 0.0);
  if (static_cast<int>(self_loops_.size()) != n_)
    throw std::invalid_argument("SignedGraph: self-loop vector length mismatch");
  for (auto& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= n_ || e.i == e.j)
      throw std::invalid_argument("SignedGraph: edge endpoints out of range");
    if (e.w == 0.0) throw std::invalid_argument("SignedGraph: zero edge weight");
  }
  std::sort(edges_.begin(), edges_.end(), [](const SignedEdge& a, const SignedEdge& b) {
    return std::pair{a.i, a.j} < std::pair{b.i, b.j};
  });
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k - 1].i == edges_[k].i && edges_[k - 1].j == edges_[k].j)
      throw std::invalid_argument("SignedGraph: duplicate edge");
  adjacency_.assign(static_cast<std::size_t>(n_), {});
  for (const auto& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.i)].push_back({e.j, e.w});
    adjacency_[static_cast<std::size_t>(e.j)].push_back({e.i, e.w});
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool SignedGraph::has_edge(int i, int j) const { return edge_weight(i, j) != 0.0; }

double SignedGraph::edge_weight(int i, int j) const {
  const auto& list = adjacency_[static_cast<std::size_t>(i)];
  auto it = std::lower_bound(list.begin(), list.end(), j,
                             [](const std::pair<int, double>& e, int node) {
                               return e.first < node;
                             });
  if (it != list.end() && it->first == j) return it->second;
  return 0.0;
}

std::vector<int> SignedGraph::component_labels() const {
  std::vector<int> label(static_cast<std::size_t>(n_), -1);
  int next = 0;
  for (int root = 0; root < n_; ++root) {
    if (label[static_cast<std::size_t>(root)] != -1) continue;
    std::deque<int> queue{root};
    label[static_cast<std::size_t>(root)] = next;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (const auto& [v, w] : neighbors(u)) {
        if (label[static_cast<std::size_t>(v)] == -1) {
          label[static_cast<std::size_t>(v)] = next;
          queue.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

bool SignedGraph::connected() const {
  if (n_ <= 1) return true;
  auto labels = component_labels();
  return std::all_of(labels.begin(), labels.end(), [](int l) { return l == 0; });
}

SparseSymMatrix generalized_laplacian(const SignedGraph& g) {
  std::vector<Triplet> triplets;
  triplets.reserve(g.edges().size() + static_cast<std::size_t>(g.size()));
  std::vector<double> diag(g.self_loops());
  for (const auto& e : g.edges()) {
    triplets.push_back({e.i, e.j, -e.w});
    diag[static_cast<std::size_t>(e.i)] += e.w;
    diag[static_cast<std::size_t>(e.j)] += e.w;
  }
  for (int i = 0; i < g.size(); ++i)
    triplets.push_back({i, i, diag[static_cast<std::size_t>(i)]});
  return SparseSymMatrix::from_triplets(g.size(), triplets);
}

SparseSymMatrix combinatorial_laplacian(const SignedGraph& g) {
  SignedGraph loopless(g.size(), g.edges());
  return generalized_laplacian(loopless);
}

double glr(const SparseSymMatrix& l, const std::vector<double>& x) {
  return l.quadratic_form(x);
}

std::optional<Coloring> is_balanced(const SignedGraph& g) {
  Coloring beta(static_cast<std::size_t>(g.size()), 0);
  for (int root = 0; root < g.size(); ++root) {
    if (beta[static_cast<std::size_t>(root)] != 0) continue;
    beta[static_cast<std::size_t>(root)] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (const auto& [v, w] : g.neighbors(u)) {
        int expected = beta[static_cast<std::size_t>(u)] * sign_of(w);
        if (beta[static_cast<std::size_t>(v)] == 0) {
          beta[static_cast<std::size_t>(v)] = expected;
          queue.push_back(v);
        } else if (beta[static_cast<std::size_t>(v)] != expected) {
          return std::nullopt;
        }
      }
    }
  }
  return beta;
}

int edge_consistency(const SignedGraph& g, const Coloring& c, int i, int j) {
  double w = g.edge_weight(i, j);
  if (w == 0.0) throw std::invalid_argument("edge_consistency: edge not present");
  return c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)] * sign_of(w);
}

SignedGraph signed_switch(const SignedGraph& g, const Coloring& c) {
  if (static_cast<int>(c.size()) != g.size())
    throw std::invalid_argument("signed_switch: coloring length mismatch");
  std::vector<SignedEdge> switched;
  switched.reserve(g.edges().size());
  std::vector<double> loops = g.self_loops();
  for (const auto& e : g.edges()) {
    double w = c[static_cast<std::size_t>(e.i)] * c[static_cast<std::size_t>(e.j)] * e.w;
    if (w <= 0.0)
      throw std::invalid_argument("signed_switch: coloring is not a valid balance coloring");
    switched.push_back({e.i, e.j, w});
    // Self-loops absorb the degree change so the generalized Laplacians
    // stay exactly similar: L' = diag(c) L diag(c).
    loops[static_cast<std::size_t>(e.i)] += e.w - w;
    loops[static_cast<std::size_t>(e.j)] += e.w - w;
  }
  return SignedGraph(g.size(), std::move(switched), std::move(loops));
}

BoundaryCondition BoundaryCondition::dirichlet(double w) {
  if (w <= 0.0) throw std::invalid_argument("BoundaryCondition: Dirichlet weight must be positive");
  return {Kind::DirichletMid, w};
}

SparseSymMatrix second_difference(int n, BoundaryCondition left, BoundaryCondition right,
                                  const std::vector<double>& weights) {
  if (n < 2) throw std::invalid_argument("second_difference: need at least two nodes");
  if (static_cast<int>(weights.size()) != n - 1)
    throw std::invalid_argument("second_difference: need n-1 edge weights");
  for (double w : weights)
    if (w <= 0.0) throw std::invalid_argument("second_difference: nonpositive edge weight");
  std::vector<SignedEdge> edges;
  edges.reserve(weights.size());
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, weights[static_cast<std::size_t>(i)]});
  std::vector<double> loops(static_cast<std::size_t>(n), 0.0);
  if (left.kind == BoundaryCondition::Kind::DirichletMid) loops.front() = 2.0 * left.weight;
  if (right.kind == BoundaryCondition::Kind::DirichletMid) loops.back() = 2.0 * right.weight;
  return generalized_laplacian(SignedGraph(n, std::move(edges), std::move(loops)));
}

int nodal_domains(const SignedGraph& g, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != g.size())
    throw std::invalid_argument("nodal_domains: dimension mismatch");
  DisjointSets sets(g.size());
  for (const auto& e : g.edges()) {
    int si = sign_of(x[static_cast<std::size_t>(e.i)]);
    int sj = sign_of(x[static_cast<std::size_t>(e.j)]);
    if (si == 0 || sj == 0) continue;
    if (si * sj == sign_of(e.w)) sets.unite(e.i, e.j);
  }
  int count = 0;
  for (int i = 0; i < g.size(); ++i)
    if (x[static_cast<std::size_t>(i)] != 0.0 && sets.find(i) == i) ++count;
  return count;
}

bool is_ms(const SignedGraph& g, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != g.size())
    throw std::invalid_argument("is_ms: dimension mismatch");
  for (const auto& e : g.edges()) {
    int si = sign_of(x[static_cast<std::size_t>(e.i)]);
    int sj = sign_of(x[static_cast<std::size_t>(e.j)]);
    if (si == 0 || sj == 0) return false;
    if (si != sign_of(e.w) * sj) return false;
  }
  return true;
}

void write_edge_list(std::ostream& os, const SignedGraph& g) {
  os << "n " << g.size() << '\n';
  for (const auto& e : g.edges())
    os << e.i << ' ' << e.j << ' ' << format_value(e.w) << '\n';
  for (int i = 0; i < g.size(); ++i)
    if (g.self_loops()[static_cast<std::size_t>(i)] != 0.0)
      os << i << ' ' << i << ' ' << format_value(g.self_loops()[static_cast<std::size_t>(i)])
         << '\n';
}

SignedGraph read_edge_list(std::istream& is) {
  std::string line;
  int n = -1;
  std::vector<SignedEdge> edges;
  std::vector<double> loops;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    if (n < 0) {
      std::string tag;
      if (!(fields >> tag >> n) || tag != "n" || n < 0)
        throw std::invalid_argument("edge list: bad header at line " + std::to_string(line_no));
      loops.assign(static_cast<std::size_t>(n), 0.0);
      continue;
    }
    int i = 0, j = 0;
    double w = 0.0;
    if (!(fields >> i >> j >> w))
      throw std::invalid_argument("edge list: malformed line " + std::to_string(line_no));
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw std::invalid_argument("edge list: node out of range at line " +
                                  std::to_string(line_no));
    if (i == j)
      loops[static_cast<std::size_t>(i)] = w;
    else
      edges.push_back({i, j, w});
  }
  if (n < 0) throw std::invalid_argument("edge list: missing header");
  return SignedGraph(n, std::move(edges), std::move(loops));
}

void write_edge_list_file(const std::string& path, const SignedGraph& g) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open for writing: " + path);
  write_edge_list(os, g);
}

SignedGraph read_edge_list_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open: " + path);
  return read_edge_list(is);
}

}  // namespace sgs
