#pragma once

#include <vector>

#include "sgs/graph.hpp"
#include "sgs/sparse.hpp"

namespace sgs {

/// Inputs of one low-pass reconstruction: generalized Laplacian, the
/// sampled node indices (distinct, in-range), the observed values at those
/// nodes, and the fidelity/prior trade-off weight mu > 0.
struct ReconstructionProblem {
  SparseSymMatrix laplacian;
  std::vector<int> samples;
  std::vector<double> observations;
  double mu = 0.01;
};

/// Solves (H^T H + mu L) x = H^T y by conjugate gradients. Requires the
/// system to be positive definite. Throws ConvergenceError with a condition
/// diagnostic when the system is numerically singular or indefinite.
std::vector<double> reconstruct(const ReconstructionProblem& p, double tol = 1e-8);

/// Mean squared entrywise difference.
double mse(const std::vector<double>& x, const std::vector<double>& xhat);

/// ||A - B||_F / ||A||_F. Not symmetric in its arguments.
double relative_error(const SparseSymMatrix& a, const SparseSymMatrix& b);

/// DELTACON similarity in (0, 1]: node-similarity matrices
/// [I + eps^2 D - eps A]^{-1} compared through the Matusita distance.
/// Exactly 1 for identical graphs; symmetric in its arguments. Signed
/// graphs can produce negative similarity entries, which are passed through
/// a sign-preserving square root.
double deltacon(const SignedGraph& g, const SignedGraph& g_b, double eps = 0.05);

}  // namespace sgs
