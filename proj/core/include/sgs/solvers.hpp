#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sgs/sparse.hpp"

namespace sgs {

/// Iterative solver failed to reach its tolerance. Carries a rough
/// condition-number estimate when the solver can produce one.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double condition_estimate = 0.0)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}

  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// Conjugate gradients for SPD systems. Returns x with
/// ||A x - b|| <= tol * ||b||. max_iter <= 0 selects 10n + 100.
std::vector<double> cg_solve(const SparseSymMatrix& a, const std::vector<double>& b, double tol,
                             int max_iter = 0);

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;
};

/// Smallest eigenpair of a symmetric matrix by a single-vector locally
/// optimal preconditioned-gradient iteration (Rayleigh-Ritz on
/// span{x, r, p}). Stops when ||A v - lambda v|| <= tol * (1 + ||A||_F);
/// the eigenvector is sign-canonicalized like dense_eig output.
EigenPair smallest_eigenpair(const SparseSymMatrix& a, double tol, int max_iter);

}  // namespace sgs
