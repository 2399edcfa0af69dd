#pragma once

#include <vector>

#include "sgs/sparse.hpp"

namespace sgs {

/// Largest dimension the dense eigendecomposition accepts. Keeps the
/// oracle path at desk scale.
inline constexpr int kDenseOracleLimit = 2000;

/// Full ascending eigendecomposition of a symmetric matrix.
/// Eigenvectors are orthonormal and sign-canonicalized: the first entry
/// with magnitude above 1e-12 is made positive.
struct DenseEigResult {
  std::vector<double> eigenvalues;                // ascending
  std::vector<std::vector<double>> eigenvectors;  // [k] is the k-th unit eigenvector

  const std::vector<double>& eigenvector(int k) const {
    return eigenvectors[static_cast<std::size_t>(k)];
  }
};

DenseEigResult dense_eig(const SparseSymMatrix& a);

/// Count of eigenvalues within tol of eigenvalues[k].
int eigenvalue_multiplicity(const std::vector<double>& eigenvalues, int k, double tol = 1e-8);

/// Canonicalizes a vector's sign in place: first entry with |v_i| > 1e-12
/// made positive. Shared by the dense and iterative eigensolvers.
void canonicalize_sign(std::vector<double>& v);

}  // namespace sgs
