#include "sgs/solvers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "sgs/dense_eig.hpp"

namespace sgs {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

// Extreme Ritz values of the CG-Lanczos tridiagonal give a cheap condition
// estimate to report on failure.
double cg_condition_estimate(const std::vector<double>& alphas, const std::vector<double>& betas) {
  const int m = static_cast<int>(alphas.size());
  if (m == 0) return 0.0;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    double diag = 1.0 / alphas[static_cast<std::size_t>(k)];
    if (k > 0)
      diag += betas[static_cast<std::size_t>(k - 1)] / alphas[static_cast<std::size_t>(k - 1)];
    t(k, k) = diag;
    if (k + 1 < m) {
      double off = std::sqrt(betas[static_cast<std::size_t>(k)]) /
                   alphas[static_cast<std::size_t>(k)];
      t(k, k + 1) = off;
      t(k + 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
  double lo = solver.eigenvalues()(0);
  double hi = solver.eigenvalues()(m - 1);
  return lo > 0.0 ? hi / lo : 0.0;
}

}  // namespace

std::vector<double> cg_solve(const SparseSymMatrix& a, const std::vector<double>& b, double tol,
                             int max_iter) {
  const int n = a.size();
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("cg_solve: dimension mismatch");
  if (tol <= 0.0) throw std::invalid_argument("cg_solve: tolerance must be positive");
  if (max_iter <= 0) max_iter = 10 * n + 100;

  std::vector<double> x(b.size(), 0.0);
  double b_norm = norm(b);
  if (b_norm == 0.0) return x;

  std::vector<double> r = b;
  std::vector<double> p = r;
  double rr = dot(r, r);
  std::vector<double> alphas, betas;

  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<double> ap = a.matvec(p);
    double pap = dot(p, ap);
    if (pap <= 0.0)
      throw ConvergenceError("cg_solve: matrix is not positive definite",
                             cg_condition_estimate(alphas, betas));
    double alpha = rr / pap;
    axpy(alpha, p, x);
    axpy(-alpha, ap, r);
    double rr_next = dot(r, r);
    alphas.push_back(alpha);
    if (std::sqrt(rr_next) <= tol * b_norm) {
      // Recurrence residual can drift; confirm with the true residual.
      std::vector<double> true_r = a.matvec(x);
      for (std::size_t i = 0; i < true_r.size(); ++i) true_r[i] = b[i] - true_r[i];
      if (norm(true_r) <= tol * b_norm) return x;
      r = true_r;
      rr_next = dot(r, r);
      p = r;
      rr = rr_next;
      continue;
    }
    double beta = rr_next / rr;
    betas.push_back(beta);
    rr = rr_next;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
  }
  throw ConvergenceError("cg_solve: iteration cap exceeded",
                         cg_condition_estimate(alphas, betas));
}

EigenPair smallest_eigenpair(const SparseSymMatrix& a, double tol, int max_iter) {
  const int n = a.size();
  if (n == 0) throw std::invalid_argument("smallest_eigenpair: empty matrix");
  if (tol <= 0.0) throw std::invalid_argument("smallest_eigenpair: tolerance must be positive");

  const double scale = 1.0 + a.frobenius_norm();

  // Deterministic pseudo-random start; a generic direction avoids starting
  // in an invariant subspace of a higher eigenpair.
  std::vector<double> x(static_cast<std::size_t>(n));
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (int i = 0; i < n; ++i) {
    h ^= (h << 13);
    h ^= (h >> 7);
    h ^= (h << 17);
    h += static_cast<std::uint64_t>(i) * 0xbf58476d1ce4e5b9ULL;
    x[static_cast<std::size_t>(i)] =
        0.5 + static_cast<double>(h >> 40) / static_cast<double>(1 << 24);
  }
  double x_norm = norm(x);
  for (double& v : x) v /= x_norm;

  std::vector<double> p;  // previous update direction
  double lambda = 0.0;

  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<double> ax = a.matvec(x);
    lambda = dot(x, ax);
    std::vector<double> r = ax;
    axpy(-lambda, x, r);
    if (norm(r) <= tol * scale) {
      canonicalize_sign(x);
      return {lambda, x};
    }

    // Rayleigh-Ritz over span{x, r, p} via an orthonormal basis.
    std::vector<std::vector<double>> basis;
    basis.push_back(x);
    for (const std::vector<double>* cand : {&r, &p}) {
      if (cand->empty()) continue;
      std::vector<double> v = *cand;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) axpy(-dot(q, v), q, v);
      double v_norm = norm(v);
      if (v_norm > 1e-14 * scale) {
        for (double& entry : v) entry /= v_norm;
        basis.push_back(std::move(v));
      }
    }
    const int m = static_cast<int>(basis.size());
    if (m == 1) {
      canonicalize_sign(x);
      return {lambda, x};  // residual already deflated below basis tolerance
    }
    Eigen::MatrixXd g(m, m);
    std::vector<std::vector<double>> a_basis;
    a_basis.reserve(static_cast<std::size_t>(m));
    for (const auto& q : basis) a_basis.push_back(a.matvec(q));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) g(i, j) = dot(basis[static_cast<std::size_t>(i)],
                                                a_basis[static_cast<std::size_t>(j)]);
    g = 0.5 * (g + g.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(g);
    Eigen::VectorXd y = small.eigenvectors().col(0);

    std::vector<double> x_next(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m; ++i) axpy(y(i), basis[static_cast<std::size_t>(i)], x_next);
    double next_norm = norm(x_next);
    for (double& v : x_next) v /= next_norm;

    p = x_next;
    axpy(-dot(x, x_next), x, p);
    x = std::move(x_next);
  }
  throw ConvergenceError("smallest_eigenpair: iteration cap exceeded");
}

}  // namespace sgs
