#pragma once

#include <vector>

#include "sgs/sparse.hpp"

namespace sgs {

/// Similarity-transformed Laplacian with all Gershgorin disc left-ends
/// aligned at the smallest eigenvalue: L_p = S L_B S^{-1} with
/// S = diag(1/v1_1, ..., 1/v1_N) and v1 the first eigenvector of L_B.
struct AlignedOperator {
  SparseSymMatrix l_p;
  std::vector<double> v1;        // canonicalized unit first eigenvector
  double lambda_min = 0.0;
  std::vector<double> scalars;   // 1 / v1_i
  double alignment_error = 0.0;  // max_i |left_end_i(l_p) - lambda_min|
};

/// Aligns the generalized Laplacian of a connected balanced signed graph.
/// Uses the iterative eigensolver and falls back to the dense oracle below
/// its size limit whenever the iterative result misses the alignment
/// tolerance. Throws ConvergenceError when no eigenpair of sufficient
/// quality can be produced, and invalid_argument when v1 carries an entry
/// below 1e-10 * ||v1||_inf (a numerically reducible graph).
AlignedOperator gdpa_align(const SparseSymMatrix& l_b, double tol = 1e-10, int max_iter = 5000);

}  // namespace sgs
