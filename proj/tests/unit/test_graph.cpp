#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

#include "sgs/dense_eig.hpp"
#include "sgs/graph.hpp"
#include "test_support.hpp"

using namespace sgs;
using namespace sgs::test;

namespace {

// Independent balance oracle: enumerate every simple cycle (n <= 8) and
// check its negative-edge parity.
bool balanced_by_cycle_enumeration(const SignedGraph& g) {
  const int n = g.size();
  std::vector<int> path;
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  bool balanced = true;

  std::function<void(int, int, int)> extend = [&](int start, int current, int negatives) {
    if (!balanced) return;
    for (const auto& [next, w] : g.neighbors(current)) {
      if (next == start && path.size() >= 3) {
        int total = negatives + (w < 0.0 ? 1 : 0);
        if (total % 2 == 1) balanced = false;
        continue;
      }
      // Start from the cycle's minimum node so each cycle is seen once.
      if (next <= start || on_path[static_cast<std::size_t>(next)]) continue;
      path.push_back(next);
      on_path[static_cast<std::size_t>(next)] = 1;
      extend(start, next, negatives + (w < 0.0 ? 1 : 0));
      on_path[static_cast<std::size_t>(next)] = 0;
      path.pop_back();
    }
  };

  for (int start = 0; start < n && balanced; ++start) {
    path = {start};
    on_path.assign(static_cast<std::size_t>(n), 0);
    on_path[static_cast<std::size_t>(start)] = 1;
    extend(start, start, 0);
  }
  return balanced;
}

// Edge-sum form of the signal variation measure, evaluated from the graph.
double variation_edge_sum(const SignedGraph& g, const std::vector<double>& x) {
  double acc = 0.0;
  for (const auto& e : g.edges()) {
    double d = x[static_cast<std::size_t>(e.i)] - x[static_cast<std::size_t>(e.j)];
    acc += e.w * d * d;
  }
  for (int i = 0; i < g.size(); ++i)
    acc += g.self_loops()[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)] *
           x[static_cast<std::size_t>(i)];
  return acc;
}

SignedGraph triangle(double w01, double w02, double w12) {
  return SignedGraph(3, {{0, 1, w01}, {0, 2, w02}, {1, 2, w12}});
}

}  // namespace

TEST_CASE("generalized_laplacian: two-node examples") {
  SignedGraph positive(2, {{0, 1, 1.0}});
  SparseSymMatrix lp = generalized_laplacian(positive);
  CHECK(lp.at(0, 0) == 1.0);
  CHECK(lp.at(0, 1) == -1.0);
  CHECK(lp.at(1, 1) == 1.0);

  SignedGraph negative(2, {{0, 1, -1.0}});
  SparseSymMatrix ln = generalized_laplacian(negative);
  CHECK(ln.at(0, 0) == -1.0);
  CHECK(ln.at(0, 1) == 1.0);
  CHECK(ln.at(1, 1) == -1.0);
}

TEST_CASE("generalized_laplacian: 5-node path with a boundary self-loop") {
  std::vector<SignedEdge> edges;
  for (int i = 0; i < 4; ++i) edges.push_back({i, i + 1, 1.0});
  std::vector<double> loops(5, 0.0);
  loops[0] = 0.8;
  SignedGraph g(5, edges, loops);
  SparseSymMatrix l = generalized_laplacian(g);
  CHECK(l.at(0, 0) == doctest::Approx(1.8));
  CHECK(l.at(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("combinatorial_laplacian: loop handling") {
  Rng rng(2);
  SignedGraph loopless = random_signed_graph(10, 3.0, 0.2, 1.5, 0.4, rng);
  SparseSymMatrix a = generalized_laplacian(loopless);
  SparseSymMatrix b = combinatorial_laplacian(loopless);
  for (int i = 0; i < 10; ++i)
    for (const auto& [col, value] : a.row(i)) CHECK(b.at(i, col) == value);

  SignedGraph with_loops = random_signed_graph(10, 3.0, 0.2, 1.5, 0.4, rng, 0.1, 0.9);
  SparseSymMatrix diff = subtract(generalized_laplacian(with_loops),
                                  combinatorial_laplacian(with_loops));
  for (int i = 0; i < 10; ++i) {
    CHECK(diff.at(i, i) ==
          doctest::Approx(with_loops.self_loops()[static_cast<std::size_t>(i)]));
    for (const auto& [col, value] : diff.row(i))
      if (col != i) CHECK(value == 0.0);
  }
}

TEST_CASE("combinatorial_laplacian: rows sum to zero") {
  SparseSymMatrix l = combinatorial_laplacian(triangle(1.0, 1.0, -2.0));
  for (int i = 0; i < 3; ++i) {
    double row_sum = 0.0;
    for (const auto& [col, value] : l.row(i)) row_sum += value;
    CHECK(std::abs(row_sum) <= 1e-14);
  }
}

TEST_CASE("glr: constant signal on a positive loop-free graph") {
  Rng rng(13);
  SignedGraph g = random_signed_graph(12, 3.0, 0.2, 1.5, 0.0, rng);
  std::vector<double> ones(12, 1.0);
  CHECK(std::abs(glr(generalized_laplacian(g), ones)) <= 1e-12);
}

TEST_CASE("glr: eigenvector variation equals its eigenvalue") {
  Rng rng(19);
  SignedGraph g = random_signed_graph(14, 3.0, 0.2, 1.5, 0.5, rng, -0.3, 0.6);
  SparseSymMatrix l = generalized_laplacian(g);
  auto eig = dense_eig(l);
  for (int k = 0; k < 14; k += 3)
    CHECK(glr(l, eig.eigenvector(k)) ==
          doctest::Approx(eig.eigenvalues[static_cast<std::size_t>(k)]).epsilon(1e-10));
}

TEST_CASE("glr: quadratic form equals the edge-sum form") {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    int n = rng.uniform_int(2, 16);
    SignedGraph g = random_signed_graph(n, 3.0, 0.2, 2.0, 0.5, rng, -0.5, 0.5);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = rng.uniform(-2.0, 2.0);
    double via_matrix = glr(generalized_laplacian(g), x);
    double via_edges = variation_edge_sum(g, x);
    REQUIRE(std::abs(via_matrix - via_edges) <= 1e-10 * (1.0 + std::abs(via_matrix)));
  }
}

TEST_CASE("is_balanced: triangles from the two-cluster picture") {
  CHECK_FALSE(is_balanced(triangle(1.0, 1.0, -1.0)).has_value());
  SignedGraph two_negative = triangle(-1.0, -1.0, 1.0);
  auto coloring = is_balanced(two_negative);
  REQUIRE(coloring.has_value());
  CHECK((*coloring)[0] == 1);
  for (const auto& e : two_negative.edges())
    CHECK(edge_consistency(two_negative, *coloring, e.i, e.j) == 1);
}

TEST_CASE("is_balanced: single positive edge") {
  auto coloring = is_balanced(SignedGraph(2, {{0, 1, 2.0}}));
  REQUIRE(coloring.has_value());
  CHECK((*coloring)[0] == 1);
  CHECK((*coloring)[1] == 1);
}

TEST_CASE("is_balanced: agrees with exhaustive cycle enumeration") {
  Rng rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    int n = rng.uniform_int(3, 8);
    SignedGraph g = random_signed_graph(n, 2.5, 0.2, 1.5, 0.5, rng);
    REQUIRE(is_balanced(g).has_value() == balanced_by_cycle_enumeration(g));
  }
}

TEST_CASE("edge_consistency: sign table and missing edge") {
  SignedGraph g(2, {{0, 1, 1.5}});
  SignedGraph h(2, {{0, 1, -1.5}});
  CHECK(edge_consistency(g, {1, 1}, 0, 1) == 1);
  CHECK(edge_consistency(h, {1, 1}, 0, 1) == -1);
  CHECK(edge_consistency(h, {1, -1}, 0, 1) == 1);
  CHECK_THROWS_AS(edge_consistency(g, {1, 1}, 1, 1), std::invalid_argument);
}

TEST_CASE("signed_switch: trivial and hand cases") {
  Rng rng(3);
  SignedGraph positive = random_signed_graph(8, 3.0, 0.5, 1.0, 0.0, rng);
  SignedGraph unchanged = signed_switch(positive, Coloring(8, 1));
  for (std::size_t k = 0; k < positive.edges().size(); ++k)
    CHECK(unchanged.edges()[k].w == positive.edges()[k].w);

  SignedGraph negative(2, {{0, 1, -1.0}});
  SignedGraph switched = signed_switch(negative, {1, -1});
  CHECK(switched.edges()[0].w == doctest::Approx(1.0));

  CHECK_THROWS_AS(signed_switch(negative, {1, 1}), std::invalid_argument);
}

TEST_CASE("signed_switch: spectrum equality and eigenvector mapping") {
  Rng rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    int n = rng.uniform_int(4, 30);
    SignedGraph g = random_balanced_graph(n, 3.5, rng, -0.2, 0.7);
    auto coloring = is_balanced(g);
    REQUIRE(coloring.has_value());
    SignedGraph switched = signed_switch(g, *coloring);
    auto eig_g = dense_eig(generalized_laplacian(g));
    auto eig_s = dense_eig(generalized_laplacian(switched));
    for (int k = 0; k < n; ++k) {
      REQUIRE(std::abs(eig_g.eigenvalues[static_cast<std::size_t>(k)] -
                       eig_s.eigenvalues[static_cast<std::size_t>(k)]) < 1e-8);
      if (eigenvalue_multiplicity(eig_g.eigenvalues, k, 1e-6) > 1) continue;
      std::vector<double> mapped = eig_s.eigenvector(k);
      for (int i = 0; i < n; ++i)
        mapped[static_cast<std::size_t>(i)] *= (*coloring)[static_cast<std::size_t>(i)];
      REQUIRE(vector_distance_up_to_sign(eig_g.eigenvector(k), mapped) < 1e-8);
    }
  }
}

TEST_CASE("second_difference: 3-node matrices") {
  SparseSymMatrix neumann =
      second_difference(3, BoundaryCondition::neumann(), BoundaryCondition::neumann(),
                        {1.0, 1.0});
  CHECK(neumann.at(0, 0) == 1.0);
  CHECK(neumann.at(0, 1) == -1.0);
  CHECK(neumann.at(1, 1) == 2.0);
  CHECK(neumann.at(2, 2) == 1.0);
  CHECK(neumann.at(0, 2) == 0.0);

  SparseSymMatrix dirichlet =
      second_difference(3, BoundaryCondition::dirichlet(0.5), BoundaryCondition::neumann(),
                        {1.0, 1.0});
  CHECK(dirichlet.at(0, 0) == doctest::Approx(2.0));
  CHECK(dirichlet.at(2, 2) == doctest::Approx(1.0));

  SparseSymMatrix right =
      second_difference(3, BoundaryCondition::neumann(), BoundaryCondition::dirichlet(1.5),
                        {1.0, 1.0});
  CHECK(right.at(0, 0) == doctest::Approx(1.0));
  CHECK(right.at(2, 2) == doctest::Approx(4.0));

  CHECK_THROWS_AS(second_difference(3, BoundaryCondition::neumann(),
                                    BoundaryCondition::neumann(), {1.0, -1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BoundaryCondition::dirichlet(0.0), std::invalid_argument);
}

TEST_CASE("second_difference: Neumann-Neumann eigenvectors are the DCT-II basis") {
  const int n = 8;
  SparseSymMatrix t = second_difference(n, BoundaryCondition::neumann(),
                                        BoundaryCondition::neumann(),
                                        std::vector<double>(n - 1, 1.0));
  auto eig = dense_eig(t);
  const double pi = std::acos(-1.0);
  for (int k = 0; k < n; ++k) {
    std::vector<double> dct(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) dct[static_cast<std::size_t>(j)] =
        std::cos(pi * k * (j + 0.5) / n);
    double norm = 0.0;
    for (double v : dct) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : dct) v /= norm;
    REQUIRE(vector_distance_up_to_sign(eig.eigenvector(k), dct) <= 1e-8);
    REQUIRE(std::abs(eig.eigenvalues[static_cast<std::size_t>(k)] -
                     (2.0 - 2.0 * std::cos(pi * k / n))) <= 1e-10);
  }
}

TEST_CASE("nodal_domains: base cases") {
  Rng rng(7);
  SignedGraph positive = random_signed_graph(10, 3.0, 0.3, 1.0, 0.0, rng);
  std::vector<double> strictly_positive(10, 0.5);
  CHECK(nodal_domains(positive, strictly_positive) == 1);

  SignedGraph edge(2, {{0, 1, 1.0}});
  CHECK(nodal_domains(edge, {1.0, -1.0}) == 2);

  // Zero entries belong to no domain.
  SignedGraph path(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK(nodal_domains(path, {1.0, 0.0, 1.0}) == 2);
}

TEST_CASE("nodal_domains: first eigenvector of a balanced graph forms one domain") {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.uniform_int(4, 20);
    SignedGraph g = random_balanced_graph(n, 3.0, rng);
    auto eig = dense_eig(generalized_laplacian(g));
    CHECK(nodal_domains(g, eig.eigenvector(0)) == 1);
    CHECK(is_ms(g, eig.eigenvector(0)));
  }
}

TEST_CASE("nodal_domains: bounded by k + r - 1") {
  Rng rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    int n = rng.uniform_int(4, 20);
    SignedGraph g = random_balanced_graph(n, 3.0, rng, -0.2, 0.5);
    auto eig = dense_eig(generalized_laplacian(g));
    for (int k = 0; k < n; ++k) {
      int r = eigenvalue_multiplicity(eig.eigenvalues, k);
      REQUIRE(nodal_domains(g, eig.eigenvector(k)) <= (k + 1) + r - 1);
    }
  }
}

TEST_CASE("is_ms: direct examples") {
  Rng rng(11);
  SignedGraph positive = random_signed_graph(8, 3.0, 0.3, 1.0, 0.0, rng);
  CHECK(is_ms(positive, std::vector<double>(8, 1.0)));

  SignedGraph edge(2, {{0, 1, 1.0}});
  CHECK_FALSE(is_ms(edge, {1.0, -1.0}));
  CHECK_FALSE(is_ms(edge, {1.0, 0.0}));
}

TEST_CASE("rayleigh quotient: restricted minimization reproduces each eigenvalue") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(4, 20);
    SignedGraph g = random_balanced_graph(n, 3.0, rng, -0.2, 0.4);
    SparseSymMatrix l = generalized_laplacian(g);
    auto eig = dense_eig(l);
    Eigen::MatrixXd dense = to_eigen(l);
    for (int k = 1; k < std::min(n, 6); ++k) {
      Eigen::MatrixXd previous(n, k);
      for (int c = 0; c < k; ++c)
        for (int i = 0; i < n; ++i)
          previous(i, c) = eig.eigenvector(c)[static_cast<std::size_t>(i)];
      // Orthonormal basis of the complement via full QR.
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(previous);
      Eigen::MatrixXd q = qr.householderQ();
      Eigen::MatrixXd complement = q.rightCols(n - k);
      Eigen::MatrixXd restricted = complement.transpose() * dense * complement;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(restricted);
      REQUIRE(std::abs(solver.eigenvalues()(0) -
                       eig.eigenvalues[static_cast<std::size_t>(k)]) < 1e-8);
    }
  }
}

TEST_CASE("edge list: exact round-trip and validation") {
  Rng rng(67);
  SignedGraph g = random_signed_graph(9, 3.0, 0.2, 1.7, 0.5, rng, -0.4, 0.8);
  std::stringstream buffer;
  write_edge_list(buffer, g);
  SignedGraph h = read_edge_list(buffer);
  REQUIRE(h.size() == g.size());
  REQUIRE(h.edges().size() == g.edges().size());
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    CHECK(h.edges()[k].i == g.edges()[k].i);
    CHECK(h.edges()[k].j == g.edges()[k].j);
    CHECK(h.edges()[k].w == g.edges()[k].w);
  }
  CHECK(h.self_loops() == g.self_loops());

  std::stringstream bad("n 2\n0 5 1.0\n");
  CHECK_THROWS_AS(read_edge_list(bad), std::invalid_argument);
  std::stringstream no_header("0 1 1.0\n");
  CHECK_THROWS_AS(read_edge_list(no_header), std::invalid_argument);
}

TEST_CASE("is_balanced: disconnected graphs are colored per component") {
  SignedGraph ok(5, {{0, 1, -1.0}, {2, 3, 1.0}, {3, 4, -2.0}});
  auto coloring = is_balanced(ok);
  REQUIRE(coloring.has_value());
  CHECK((*coloring)[0] * (*coloring)[1] == -1);
  CHECK((*coloring)[2] == 1);  // each component roots at its lowest node
  CHECK((*coloring)[3] == 1);
  CHECK((*coloring)[4] == -1);

  SignedGraph bad(6, {{0, 1, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {2, 4, -1.0}});
  CHECK_FALSE(is_balanced(bad).has_value());
}

TEST_CASE("signed graph: validation and components") {
  CHECK_THROWS_AS(SignedGraph(2, {{0, 1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SignedGraph(2, {{0, 1, 1.0}, {1, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SignedGraph(2, {{0, 2, 1.0}}), std::invalid_argument);

  SignedGraph two_parts(4, {{0, 1, 1.0}, {2, 3, -1.0}});
  CHECK_FALSE(two_parts.connected());
  auto labels = two_parts.component_labels();
  CHECK(labels[0] == labels[1]);
  CHECK(labels[2] == labels[3]);
  CHECK(labels[0] != labels[2]);
}
