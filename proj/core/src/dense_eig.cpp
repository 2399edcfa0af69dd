#include "sgs/dense_eig.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace sgs {

void canonicalize_sign(std::vector<double>& v) {
  for (double entry : v) {
    if (std::abs(entry) > 1e-12) {
      if (entry < 0.0)
        for (double& x : v) x = -x;
      return;
    }
  }
}

DenseEigResult dense_eig(const SparseSymMatrix& a) {
  const int n = a.size();
  if (n > kDenseOracleLimit)
    throw std::invalid_argument("dense_eig: dimension exceeds oracle limit");
  if (n == 0) return {};

  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (const auto& [col, value] : a.row(i)) dense(i, col) = value;
  // Structural symmetry is an invariant of SparseSymMatrix; symmetrize the
  // values so similarity-scaled inputs see their symmetric part rejected
  // rather than silently used.
  if (!dense.isApprox(dense.transpose(), 1e-12))
    throw std::invalid_argument("dense_eig: matrix values are not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense_eig: eigensolver failed");

  DenseEigResult result;
  result.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  result.eigenvectors.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    auto& v = result.eigenvectors[static_cast<std::size_t>(k)];
    v.assign(solver.eigenvectors().col(k).data(), solver.eigenvectors().col(k).data() + n);
    canonicalize_sign(v);
  }
  return result;
}

int eigenvalue_multiplicity(const std::vector<double>& eigenvalues, int k, double tol) {
  int count = 0;
  double reference = eigenvalues[static_cast<std::size_t>(k)];
  for (double value : eigenvalues)
    if (std::abs(value - reference) <= tol) ++count;
  return count;
}

}  // namespace sgs
