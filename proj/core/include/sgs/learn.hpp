#pragma once

#include <string>
#include <vector>

#include "sgs/graph.hpp"
#include "sgs/sparse.hpp"

namespace sgs {

/// Row-major matrix of training signals: one row per signal, one column
/// per node.
struct SignalMatrix {
  int num_signals = 0;
  int num_nodes = 0;
  std::vector<double> data;             // num_signals * num_nodes
  std::vector<std::string> labels;      // optional per-node labels

  double at(int s, int i) const {
    return data[static_cast<std::size_t>(s) * static_cast<std::size_t>(num_nodes) +
                static_cast<std::size_t>(i)];
  }
  double& at(int s, int i) {
    return data[static_cast<std::size_t>(s) * static_cast<std::size_t>(num_nodes) +
                static_cast<std::size_t>(i)];
  }
};

/// Biased empirical covariance (1/S normalization) plus an optional ridge
/// on the diagonal. Throws when every signal is identical and ridge is 0.
SparseSymMatrix empirical_covariance(const SignalMatrix& x, double ridge = 0.0);

struct PrecisionEstimate {
  SparseSymMatrix precision;
  double phi = 0.0;
  int iterations = 0;            // completed BCD sweeps
  double delta = 0.0;            // final mean absolute off-diagonal change
  bool converged = false;
  std::vector<double> objective_trace;  // objective value after each sweep
};

/// Sparse inverse covariance by block coordinate descent, l1 penalty on the
/// off-diagonal entries only (the diagonal of the estimated covariance
/// stays at the input's diagonal). Converges when the mean absolute change
/// of the working covariance off-diagonals drops below
/// tol * mean |offdiag(C)|.
PrecisionEstimate glasso(const SparseSymMatrix& cov, double phi, double tol = 1e-4,
                         int max_iter = 200);

/// Interprets a symmetric precision matrix as a generalized Laplacian:
/// edge weights are the negated off-diagonals (entries at or below the
/// prune threshold dropped), self-loops absorb the diagonal remainder so
/// generalized_laplacian() reproduces the matrix exactly.
SignedGraph precision_to_graph(const SparseSymMatrix& p, double prune = 1e-8);

}  // namespace sgs
