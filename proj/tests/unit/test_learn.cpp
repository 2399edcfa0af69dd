#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>

#include "sgs/dense_eig.hpp"
#include "sgs/learn.hpp"
#include "test_support.hpp"

using namespace sgs;
using namespace sgs::test;

namespace {

SignalMatrix make_signals(int nodes, std::vector<std::vector<double>> rows) {
  SignalMatrix x;
  x.num_nodes = nodes;
  x.num_signals = static_cast<int>(rows.size());
  for (const auto& row : rows) x.data.insert(x.data.end(), row.begin(), row.end());
  return x;
}

double glasso_objective(const Eigen::MatrixXd& p, const Eigen::MatrixXd& c, double phi) {
  Eigen::LLT<Eigen::MatrixXd> llt(p);
  REQUIRE(llt.info() == Eigen::Success);
  double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  double l1 = 0.0;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (i != j) l1 += std::abs(p(i, j));
  return (p * c).trace() - logdet + phi * l1;
}

// Golden-section minimizer for the diagonal 1-D stationarity oracle.
double minimize_1d(double lo, double hi, const std::function<double(double)>& f) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  for (int iter = 0; iter < 200; ++iter) {
    if (f(c) < f(d))
      b = d;
    else
      a = c;
    c = b - ratio * (b - a);
    d = a + ratio * (b - a);
  }
  return 0.5 * (a + b);
}

// 2x2 closed form under the off-diagonal-only penalty: the estimated
// covariance soft-thresholds the off-diagonal and keeps the diagonal.
Eigen::Matrix2d closed_form_2x2(double c00, double c01, double c11, double phi) {
  double soft = 0.0;
  if (c01 > phi) soft = c01 - phi;
  if (c01 < -phi) soft = c01 + phi;
  Eigen::Matrix2d w;
  w << c00, soft, soft, c11;
  return w.inverse();
}

}  // namespace

TEST_CASE("empirical_covariance: opposite two-node signals") {
  SignalMatrix x = make_signals(2, {{1.0, 0.0}, {-1.0, 0.0}});
  SparseSymMatrix c = empirical_covariance(x);
  CHECK(c.at(0, 0) == doctest::Approx(1.0));
  CHECK(c.at(0, 1) == 0.0);
  CHECK(c.at(1, 1) == 0.0);
}

TEST_CASE("empirical_covariance: identical signals need a ridge") {
  SignalMatrix x = make_signals(2, {{0.7, -0.2}, {0.7, -0.2}});
  CHECK_THROWS_AS(empirical_covariance(x, 0.0), std::invalid_argument);
  SparseSymMatrix c = empirical_covariance(x, 0.1);
  CHECK(c.at(0, 0) == doctest::Approx(0.1));
  CHECK(c.at(1, 1) == doctest::Approx(0.1));
  CHECK(c.at(0, 1) == 0.0);
}

TEST_CASE("empirical_covariance: matches the naive double-loop computation") {
  Rng rng(3);
  SignalMatrix x;
  x.num_signals = 50;
  x.num_nodes = 10;
  x.data.resize(500);
  for (double& v : x.data) v = rng.uniform(-2.0, 2.0);
  SparseSymMatrix c = empirical_covariance(x);

  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      double mean_i = 0.0, mean_j = 0.0;
      for (int s = 0; s < 50; ++s) {
        mean_i += x.at(s, i);
        mean_j += x.at(s, j);
      }
      mean_i /= 50.0;
      mean_j /= 50.0;
      double acc = 0.0;
      for (int s = 0; s < 50; ++s) acc += (x.at(s, i) - mean_i) * (x.at(s, j) - mean_j);
      REQUIRE(std::abs(c.at(i, j) - acc / 50.0) < 1e-12);
    }
}

TEST_CASE("glasso: identity covariance keeps an identity precision") {
  SparseSymMatrix c = SparseSymMatrix::identity(4);
  for (double phi : {0.05, 0.5, 2.0}) {
    PrecisionEstimate est = glasso(c, phi);
    for (int i = 0; i < 4; ++i) {
      CHECK(est.precision.at(i, i) == doctest::Approx(1.0).epsilon(1e-8));
      for (int j = i + 1; j < 4; ++j) CHECK(est.precision.at(i, j) == 0.0);
    }
  }
  // 1-D oracle: with the diagonal unpenalized, the stationary point of
  // p*c - log(p) sits at 1/c.
  double minimizer = minimize_1d(0.01, 10.0, [](double p) { return p * 1.0 - std::log(p); });
  CHECK(minimizer == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("glasso: 2x2 closed-form soft-threshold agreement") {
  for (double c01 : {-0.8, -0.45, -0.1, 0.05, 0.3, 0.75}) {
    for (double phi : {0.05, 0.2, 0.6}) {
      SparseSymMatrix c = SparseSymMatrix::from_triplets(
          2, {{0, 0, 1.0}, {0, 1, c01}, {1, 1, 1.3}});
      PrecisionEstimate est = glasso(c, phi, 1e-8, 500);
      Eigen::Matrix2d expected = closed_form_2x2(1.0, c01, 1.3, phi);
      CHECK(std::abs(est.precision.at(0, 0) - expected(0, 0)) < 1e-6);
      CHECK(std::abs(est.precision.at(0, 1) - expected(0, 1)) < 1e-6);
      CHECK(std::abs(est.precision.at(1, 1) - expected(1, 1)) < 1e-6);
    }
  }
}

TEST_CASE("glasso: closed form survives a local perturbation check of the objective") {
  // Independent sanity check that the frozen 2x2 closed form really is the
  // minimizer: random feasible perturbations never decrease the objective.
  Rng rng(7);
  double c01 = 0.45, phi = 0.2;
  Eigen::Matrix2d c;
  c << 1.0, c01, c01, 1.3;
  Eigen::Matrix2d p_star = closed_form_2x2(1.0, c01, 1.3, phi);
  double reference = glasso_objective(p_star, c, phi);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Matrix2d perturbed = p_star;
    perturbed(0, 0) += rng.uniform(-0.05, 0.05);
    perturbed(1, 1) += rng.uniform(-0.05, 0.05);
    double d = rng.uniform(-0.05, 0.05);
    perturbed(0, 1) += d;
    perturbed(1, 0) += d;
    if (perturbed(0, 0) <= 0.0 || perturbed.determinant() <= 0.0) continue;
    REQUIRE(glasso_objective(perturbed, c, phi) >= reference - 1e-12);
  }
}

TEST_CASE("glasso: large phi gives a diagonal precision") {
  Rng rng(11);
  SparseSymMatrix c = empirical_covariance([&] {
    SignalMatrix x;
    x.num_signals = 40;
    x.num_nodes = 6;
    x.data.resize(240);
    for (double& v : x.data) v = rng.uniform(-1.0, 1.0);
    return x;
  }());
  double max_offdiag = 0.0;
  for (int i = 0; i < 6; ++i)
    for (const auto& [col, value] : c.row(i))
      if (col != i) max_offdiag = std::max(max_offdiag, std::abs(value));
  PrecisionEstimate est = glasso(c, max_offdiag * 1.01);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) CHECK(est.precision.at(i, j) == 0.0);
}

TEST_CASE("glasso: objective trace is nonincreasing") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    SignalMatrix x;
    x.num_signals = 60;
    x.num_nodes = 8;
    x.data.resize(480);
    for (double& v : x.data) v = rng.uniform(-1.5, 1.5);
    PrecisionEstimate est = glasso(empirical_covariance(x), 0.1);
    for (std::size_t k = 1; k < est.objective_trace.size(); ++k)
      REQUIRE(est.objective_trace[k] <= est.objective_trace[k - 1] + 1e-10);
  }
}

TEST_CASE("glasso: output is positive definite on random covariances") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    SignalMatrix x;
    x.num_signals = 50;
    x.num_nodes = 10;
    x.data.resize(500);
    for (double& v : x.data) v = rng.uniform(-1.0, 1.0);
    PrecisionEstimate est = glasso(empirical_covariance(x), 0.05);
    REQUIRE(dense_lambda_min(est.precision) > 0.0);
  }
}

TEST_CASE("glasso: sparsity is monotone over the shrinkage grid") {
  Rng rng(19);
  SignalMatrix x;
  x.num_signals = 80;
  x.num_nodes = 12;
  x.data.resize(960);
  for (double& v : x.data) v = rng.uniform(-1.0, 1.0);
  SparseSymMatrix c = empirical_covariance(x);
  std::size_t previous = std::numeric_limits<std::size_t>::max();
  for (double phi : {0.01, 0.1, 1.0, 10.0}) {
    PrecisionEstimate est = glasso(c, phi);
    std::size_t edges = precision_to_graph(est.precision).edges().size();
    REQUIRE(edges <= previous);
    previous = edges;
  }
}

TEST_CASE("glasso: input validation") {
  CHECK_THROWS_AS(glasso(SparseSymMatrix::from_triplets(2, {{0, 1, 0.5}}), 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(glasso(SparseSymMatrix::identity(2), 0.0), std::invalid_argument);
}

TEST_CASE("precision_to_graph: two-node examples") {
  SparseSymMatrix p1 =
      SparseSymMatrix::from_triplets(2, {{0, 0, 1.0}, {0, 1, -1.0}, {1, 1, 1.0}});
  SignedGraph g1 = precision_to_graph(p1);
  REQUIRE(g1.edges().size() == 1);
  CHECK(g1.edges()[0].w == doctest::Approx(1.0));
  CHECK(g1.self_loops()[0] == doctest::Approx(0.0));
  CHECK(g1.self_loops()[1] == doctest::Approx(0.0));

  SparseSymMatrix p2 =
      SparseSymMatrix::from_triplets(2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 1, 2.0}});
  SignedGraph g2 = precision_to_graph(p2);
  REQUIRE(g2.edges().size() == 1);
  CHECK(g2.edges()[0].w == doctest::Approx(-1.0));
  CHECK(g2.self_loops()[0] == doctest::Approx(3.0));
  SparseSymMatrix round_trip = generalized_laplacian(g2);
  CHECK(round_trip.at(0, 0) == doctest::Approx(2.0));
  CHECK(round_trip.at(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("precision_to_graph: exact round-trip on random sparse precisions") {
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    int n = rng.uniform_int(2, 20);
    SparseSymMatrix p = random_spd(n, 0.3, rng);
    SignedGraph g = precision_to_graph(p, 0.0);
    SparseSymMatrix back = generalized_laplacian(g);
    REQUIRE(back.size() == p.size());
    for (int i = 0; i < n; ++i)
      for (const auto& [col, value] : p.row(i))
        REQUIRE(std::abs(back.at(i, col) - value) <= 1e-12 * (1.0 + std::abs(value)));
  }
}
