#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "sgs/dense_eig.hpp"
#include "sgs/graph.hpp"
#include "sgs/harness.hpp"
#include "sgs/rng.hpp"
#include "sgs/sparse.hpp"

namespace sgs::test {

inline Eigen::MatrixXd to_eigen(const SparseSymMatrix& a) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.size(), a.size());
  for (int i = 0; i < a.size(); ++i)
    for (const auto& [col, value] : a.row(i)) m(i, col) = value;
  return m;
}

inline double dense_lambda_min(const SparseSymMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(a));
  return solver.eigenvalues()(0);
}

/// Ascending real spectrum of a general (pattern-symmetric) matrix.
inline std::vector<double> general_spectrum(const SparseSymMatrix& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(a));
  std::vector<double> values(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) values[static_cast<std::size_t>(i)] =
      solver.eigenvalues()(i).real();
  std::sort(values.begin(), values.end());
  return values;
}

/// Connected random signed graph with arbitrary (not balance-consistent)
/// edge signs; optional self-loop range.
inline SignedGraph random_signed_graph(int n, double avg_degree, double weight_lo,
                                       double weight_hi, double neg_probability, Rng& rng,
                                       double loop_lo = 0.0, double loop_hi = 0.0) {
  std::set<std::pair<int, int>> present;
  std::vector<SignedEdge> edges;
  auto add = [&](int i, int j) {
    int a = std::min(i, j), b = std::max(i, j);
    if (a == b || !present.insert({a, b}).second) return;
    double w = rng.uniform(weight_lo, weight_hi);
    if (rng.uniform() < neg_probability) w = -w;
    edges.push_back({a, b, w});
  };
  for (int v = 1; v < n; ++v) add(v, rng.uniform_int(0, v - 1));
  auto target = static_cast<std::size_t>(std::llround(0.5 * avg_degree * n));
  int attempts = 50 * n + 200;
  while (edges.size() < target && attempts-- > 0) add(rng.uniform_int(0, n - 1), rng.uniform_int(0, n - 1));
  std::vector<double> loops(static_cast<std::size_t>(n), 0.0);
  if (loop_hi > loop_lo)
    for (double& s : loops) s = rng.uniform(loop_lo, loop_hi);
  return SignedGraph(n, std::move(edges), std::move(loops));
}

/// Connected random balanced signed graph (plant a coloring), optional
/// self-loops.
inline SignedGraph random_balanced_graph(int n, double avg_degree, Rng& rng, double loop_lo = 0.0,
                                         double loop_hi = 0.0) {
  SignedGraph base = generate_balanced_graph(n, avg_degree, 0.3, 2.0, 0.5, rng.next_u64());
  if (loop_hi <= loop_lo) return base;
  std::vector<double> loops(static_cast<std::size_t>(n), 0.0);
  for (double& s : loops) s = rng.uniform(loop_lo, loop_hi);
  return SignedGraph(n, base.edges(), std::move(loops));
}

/// Applies the diag(c) similarity at graph level without requiring c to be
/// a valid coloring of g: switched edges plus loop absorption. Used to
/// plant a coloring into a positive graph.
inline SignedGraph plant_coloring(const SignedGraph& g, const Coloring& c) {
  std::vector<SignedEdge> edges;
  edges.reserve(g.edges().size());
  std::vector<double> loops = g.self_loops();
  for (const auto& e : g.edges()) {
    double w = c[static_cast<std::size_t>(e.i)] * c[static_cast<std::size_t>(e.j)] * e.w;
    edges.push_back({e.i, e.j, w});
    loops[static_cast<std::size_t>(e.i)] += e.w - w;
    loops[static_cast<std::size_t>(e.j)] += e.w - w;
  }
  return SignedGraph(g.size(), std::move(edges), std::move(loops));
}

/// Connected balanced signed graph whose generalized Laplacian is PD: a
/// positive graph with positive self-loops switched by a random coloring
/// (an exact similarity, so definiteness is preserved).
inline SignedGraph random_balanced_pd_graph(int n, double avg_degree, Rng& rng) {
  SignedGraph positive = generate_balanced_graph(n, avg_degree, 0.3, 2.0, 0.0, rng.next_u64());
  std::vector<double> loops(static_cast<std::size_t>(n));
  for (double& s : loops) s = rng.uniform(0.2, 0.8);
  SignedGraph with_loops(n, positive.edges(), std::move(loops));
  Coloring c(static_cast<std::size_t>(n));
  for (int& b : c) b = rng.uniform() < 0.5 ? 1 : -1;
  return plant_coloring(with_loops, c);
}

/// Random symmetric sparse matrix for linalg property tests.
inline SparseSymMatrix random_symmetric(int n, double density, Rng& rng) {
  std::vector<Triplet> triplets;
  for (int i = 0; i < n; ++i) {
    triplets.push_back({i, i, rng.uniform(-2.0, 2.0)});
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < density) triplets.push_back({i, j, rng.uniform(-2.0, 2.0)});
  }
  return SparseSymMatrix::from_triplets(n, triplets);
}

/// Random sparse SPD matrix: random symmetric shifted above its Gershgorin
/// floor.
inline SparseSymMatrix random_spd(int n, double density, Rng& rng) {
  SparseSymMatrix a = random_symmetric(n, density, rng);
  double floor = 0.0;
  for (double end : disc_left_ends(a)) floor = std::min(floor, end);
  for (int i = 0; i < n; ++i) a.add_to_diagonal(i, -floor + rng.uniform(0.1, 1.0));
  return a;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Distance between unit vectors up to sign.
inline double vector_distance_up_to_sign(const std::vector<double>& a,
                                         const std::vector<double>& b) {
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    plus = std::max(plus, std::abs(a[i] - b[i]));
    minus = std::max(minus, std::abs(a[i] + b[i]));
  }
  return std::min(plus, minus);
}

}  // namespace sgs::test
