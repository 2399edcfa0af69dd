#include "sgs/reconstruct.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sgs/dense_eig.hpp"
#include "sgs/solvers.hpp"

namespace sgs {

std::vector<double> reconstruct(const ReconstructionProblem& p, double tol) {
  const int n = p.laplacian.size();
  if (p.mu <= 0.0) throw std::invalid_argument("reconstruct: mu must be positive");
  if (p.samples.size() != p.observations.size())
    throw std::invalid_argument("reconstruct: samples/observations length mismatch");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int node : p.samples) {
    if (node < 0 || node >= n) throw std::invalid_argument("reconstruct: sample out of range");
    if (seen[static_cast<std::size_t>(node)])
      throw std::invalid_argument("reconstruct: duplicate sample index");
    seen[static_cast<std::size_t>(node)] = 1;
  }

  SparseSymMatrix b = scaled(p.laplacian, p.mu);
  for (int node : p.samples) b.add_to_diagonal(node, 1.0);

  std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
  for (std::size_t k = 0; k < p.samples.size(); ++k)
    rhs[static_cast<std::size_t>(p.samples[k])] = p.observations[k];

  try {
    return cg_solve(b, rhs, tol);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string("reconstruct: system is numerically singular or "
                                       "indefinite (") +
                               e.what() + ")",
                           e.condition_estimate());
  }
}

double mse(const std::vector<double>& x, const std::vector<double>& xhat) {
  if (x.size() != xhat.size()) throw std::invalid_argument("mse: length mismatch");
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - xhat[i];
    acc += d * d;
  }
  return acc / static_cast<double>(x.size());
}

double relative_error(const SparseSymMatrix& a, const SparseSymMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("relative_error: dimension mismatch");
  double denom = a.frobenius_norm();
  if (denom == 0.0) throw std::invalid_argument("relative_error: zero-norm reference matrix");
  return subtract(a, b).frobenius_norm() / denom;
}

namespace {

Eigen::MatrixXd deltacon_similarity(const SignedGraph& g, double eps) {
  const int n = g.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  // A carries the self-loops on its diagonal, D the full row sums.
  for (const auto& e : g.edges()) {
    m(e.i, e.j) -= eps * e.w;
    m(e.j, e.i) -= eps * e.w;
    m(e.i, e.i) += eps * eps * e.w;
    m(e.j, e.j) += eps * eps * e.w;
  }
  for (int i = 0; i < n; ++i) {
    double loop = g.self_loops()[static_cast<std::size_t>(i)];
    m(i, i) += eps * eps * loop - eps * loop;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible())
    throw std::invalid_argument("deltacon: similarity system is singular");
  return lu.inverse();
}

double signed_sqrt(double v) { return v >= 0.0 ? std::sqrt(v) : -std::sqrt(-v); }

}  // namespace

double deltacon(const SignedGraph& g, const SignedGraph& g_b, double eps) {
  if (g.size() != g_b.size()) throw std::invalid_argument("deltacon: node count mismatch");
  if (eps <= 0.0) throw std::invalid_argument("deltacon: eps must be positive");
  if (g.size() == 0) return 1.0;
  if (g.size() > kDenseOracleLimit)
    throw std::invalid_argument("deltacon: dimension exceeds the dense similarity limit");

  Eigen::MatrixXd s1 = deltacon_similarity(g, eps);
  Eigen::MatrixXd s2 = deltacon_similarity(g_b, eps);
  double acc = 0.0;
  for (int i = 0; i < s1.rows(); ++i)
    for (int j = 0; j < s1.cols(); ++j) {
      double d = signed_sqrt(s1(i, j)) - signed_sqrt(s2(i, j));
      acc += d * d;
    }
  double matusita = std::sqrt(acc);
  return 1.0 / (1.0 + matusita);
}

}  // namespace sgs
