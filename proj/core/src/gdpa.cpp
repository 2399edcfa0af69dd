#include "sgs/gdpa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sgs/dense_eig.hpp"
#include "sgs/solvers.hpp"

namespace sgs {

namespace {

// Alignment the operator must deliver (the contract), and the stricter
// target the solver aims for while cheaper routes are still available.
constexpr double kAlignmentContract = 1e-6;
constexpr double kAlignmentTarget = 1e-9;

AlignedOperator build_aligned(const SparseSymMatrix& l_b, double lambda, std::vector<double> v1) {
  double v_inf = 0.0;
  for (double entry : v1) v_inf = std::max(v_inf, std::abs(entry));
  for (double entry : v1)
    if (std::abs(entry) < 1e-10 * v_inf)
      throw std::invalid_argument(
          "gdpa_align: first eigenvector has a near-zero entry; the graph is numerically "
          "reducible (disconnected or nearly so)");

  AlignedOperator aligned;
  aligned.v1 = std::move(v1);
  aligned.lambda_min = lambda;
  aligned.scalars.resize(aligned.v1.size());
  for (std::size_t i = 0; i < aligned.v1.size(); ++i) aligned.scalars[i] = 1.0 / aligned.v1[i];
  aligned.l_p = similarity_scale(l_b, aligned.scalars);

  double deviation = 0.0;
  for (double end : disc_left_ends(aligned.l_p))
    deviation = std::max(deviation, std::abs(end - lambda));
  aligned.alignment_error = deviation;
  return aligned;
}

}  // namespace

AlignedOperator gdpa_align(const SparseSymMatrix& l_b, double tol, int max_iter) {
  if (l_b.size() == 0) throw std::invalid_argument("gdpa_align: empty matrix");

  // Iterative first, tightening the residual tolerance while the alignment
  // misses the target: a residual of rho leaves disc left-ends off by up to
  // rho / min_i |v1_i|, so large graphs may need rho well below the default.
  // Below the oracle limit the dense route settles anything left over,
  // including suspected reducibility.
  const bool use_dense = l_b.size() <= kDenseOracleLimit;
  AlignedOperator best;
  bool have_result = false;
  for (double attempt_tol = tol; attempt_tol >= 1e-15; attempt_tol *= 1e-2) {
    try {
      EigenPair pair = smallest_eigenpair(l_b, attempt_tol, max_iter);
      AlignedOperator aligned = build_aligned(l_b, pair.value, std::move(pair.vector));
      if (!have_result || aligned.alignment_error < best.alignment_error) {
        best = std::move(aligned);
        have_result = true;
      }
      if (best.alignment_error <= kAlignmentTarget) return best;
    } catch (const ConvergenceError&) {
      break;
    } catch (const std::invalid_argument&) {
      if (!use_dense) throw;  // reducibility diagnostic, dense cannot help here
      break;
    }
  }
  if (use_dense) {
    DenseEigResult eig = dense_eig(l_b);
    return build_aligned(l_b, eig.eigenvalues.front(), eig.eigenvectors.front());
  }
  if (have_result && best.alignment_error <= kAlignmentContract) return best;
  throw ConvergenceError("gdpa_align: iterative eigensolver missed the alignment tolerance "
                         "and the matrix exceeds the dense fallback limit");
}

}  // namespace sgs
