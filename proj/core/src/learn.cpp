#include "sgs/learn.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sgs {

SparseSymMatrix empirical_covariance(const SignalMatrix& x, double ridge) {
  if (x.num_signals < 2) throw std::invalid_argument("empirical_covariance: need >= 2 signals");
  if (ridge < 0.0) throw std::invalid_argument("empirical_covariance: negative ridge");
  const int s_count = x.num_signals;
  const int n = x.num_nodes;

  bool all_identical = true;
  for (int s = 1; s < s_count && all_identical; ++s)
    for (int i = 0; i < n; ++i)
      if (x.at(s, i) != x.at(0, i)) {
        all_identical = false;
        break;
      }
  if (all_identical && ridge == 0.0)
    throw std::invalid_argument("empirical_covariance: degenerate input (all signals identical)");

  std::vector<double> mean(static_cast<std::size_t>(n), 0.0);
  for (int s = 0; s < s_count; ++s)
    for (int i = 0; i < n; ++i) mean[static_cast<std::size_t>(i)] += x.at(s, i);
  for (double& m : mean) m /= static_cast<double>(s_count);

  std::vector<Triplet> triplets;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int s = 0; s < s_count; ++s)
        acc += (x.at(s, i) - mean[static_cast<std::size_t>(i)]) *
               (x.at(s, j) - mean[static_cast<std::size_t>(j)]);
      double value = acc / static_cast<double>(s_count);
      if (i == j) value += ridge;
      if (value != 0.0) triplets.push_back({i, j, value});
    }
  }
  return SparseSymMatrix::from_triplets(n, triplets);
}

namespace {

double soft_threshold(double value, double cut) {
  if (value > cut) return value - cut;
  if (value < -cut) return value + cut;
  return 0.0;
}

double glasso_objective(const Eigen::MatrixXd& p, const Eigen::MatrixXd& c, double phi) {
  Eigen::LLT<Eigen::MatrixXd> llt(p);
  double logdet;
  if (llt.info() == Eigen::Success) {
    logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  } else {
    return std::numeric_limits<double>::infinity();
  }
  double l1 = 0.0;
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (i != j) l1 += std::abs(p(i, j));
  return (p * c).trace() - logdet + phi * l1;
}

// Recovers the precision matrix from the estimated covariance and the final
// lasso coefficients; the coefficient zeros become exact zeros in P.
Eigen::MatrixXd recover_precision(const Eigen::MatrixXd& w, const Eigen::MatrixXd& beta) {
  const int n = static_cast<int>(w.rows());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double cross = 0.0;
    for (int i = 0; i < n; ++i)
      if (i != j) cross += w(i, j) * beta(i, j);
    if (w(j, j) - cross <= 0.0)
      throw std::invalid_argument(
          "glasso: working covariance lost positive definiteness (input not PSD?)");
    double p_jj = 1.0 / (w(j, j) - cross);
    p(j, j) = p_jj;
    for (int i = 0; i < n; ++i)
      if (i != j) p(i, j) = -beta(i, j) * p_jj;
  }
  // Symmetrize while keeping shared exact zeros exact.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = (p(i, j) == 0.0 && p(j, i) == 0.0) ? 0.0 : 0.5 * (p(i, j) + p(j, i));
      p(i, j) = v;
      p(j, i) = v;
    }
  return p;
}

}  // namespace

PrecisionEstimate glasso(const SparseSymMatrix& cov, double phi, double tol, int max_iter) {
  if (phi <= 0.0) throw std::invalid_argument("glasso: phi must be positive");
  if (tol <= 0.0) throw std::invalid_argument("glasso: tol must be positive");
  const int n = cov.size();
  if (n == 0) throw std::invalid_argument("glasso: empty covariance");

  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (const auto& [col, value] : cov.row(i)) c(i, col) = value;
  for (int i = 0; i < n; ++i)
    if (c(i, i) <= 0.0)
      throw std::invalid_argument("glasso: covariance diagonal must be strictly positive");

  PrecisionEstimate result;
  result.phi = phi;

  if (n == 1) {
    result.precision = SparseSymMatrix::from_triplets(1, {{0, 0, 1.0 / c(0, 0)}});
    result.converged = true;
    result.objective_trace.push_back(glasso_objective(Eigen::MatrixXd::Constant(1, 1, 1.0 / c(0, 0)), c, phi));
    return result;
  }

  double offdiag_scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) offdiag_scale += std::abs(c(i, j));
  offdiag_scale /= static_cast<double>(n) * static_cast<double>(n - 1);
  double threshold = tol * (offdiag_scale > 0.0 ? offdiag_scale : 1.0);

  Eigen::MatrixXd w = c;                                   // working covariance estimate
  Eigen::MatrixXd beta = Eigen::MatrixXd::Zero(n, n);      // lasso coefficients per column
  const double inner_tol = 1e-2 * tol;
  const int inner_cap = 200;

  int sweep = 0;
  for (; sweep < max_iter; ++sweep) {
    double total_change = 0.0;
    for (int j = 0; j < n; ++j) {
      // Cyclic coordinate descent on the column-j lasso subproblem.
      for (int inner = 0; inner < inner_cap; ++inner) {
        double inner_change = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == j) continue;
          double gradient = c(k, j);
          for (int l = 0; l < n; ++l)
            if (l != j && l != k) gradient -= w(k, l) * beta(l, j);
          double updated = soft_threshold(gradient, phi) / w(k, k);
          inner_change += std::abs(updated - beta(k, j));
          beta(k, j) = updated;
        }
        if (inner_change <= inner_tol * (offdiag_scale > 0.0 ? offdiag_scale : 1.0)) break;
      }
      for (int i = 0; i < n; ++i) {
        if (i == j) continue;
        double w_ij = 0.0;
        for (int l = 0; l < n; ++l)
          if (l != j) w_ij += w(i, l) * beta(l, j);
        total_change += std::abs(w_ij - w(i, j));
        w(i, j) = w_ij;
        w(j, i) = w_ij;
      }
    }
    double mean_change = total_change / (static_cast<double>(n) * static_cast<double>(n - 1));
    result.delta = mean_change;
    result.objective_trace.push_back(glasso_objective(recover_precision(w, beta), c, phi));
    if (mean_change < threshold) {
      result.converged = true;
      ++sweep;
      break;
    }
  }
  result.iterations = sweep;

  Eigen::MatrixXd p = recover_precision(w, beta);
  std::vector<Triplet> triplets;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (p(i, j) != 0.0) triplets.push_back({i, j, p(i, j)});
  result.precision = SparseSymMatrix::from_triplets(n, triplets);
  return result;
}

SignedGraph precision_to_graph(const SparseSymMatrix& p, double prune) {
  if (prune < 0.0) throw std::invalid_argument("precision_to_graph: negative prune threshold");
  const int n = p.size();
  std::vector<SignedEdge> edges;
  std::vector<double> loops(static_cast<std::size_t>(n), 0.0);
  std::vector<double> offdiag_sum(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (const auto& [col, value] : p.row(i)) {
      if (col <= i) continue;
      if (std::abs(value) <= prune) continue;
      double w = -value;
      edges.push_back({i, col, w});
      offdiag_sum[static_cast<std::size_t>(i)] += w;
      offdiag_sum[static_cast<std::size_t>(col)] += w;
    }
  }
  for (int i = 0; i < n; ++i)
    loops[static_cast<std::size_t>(i)] = p.at(i, i) - offdiag_sum[static_cast<std::size_t>(i)];
  return SignedGraph(n, std::move(edges), std::move(loops));
}

}  // namespace sgs
