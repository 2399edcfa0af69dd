#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sgs {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Sparse symmetric matrix storing the full pattern as one sorted
/// (column, value) list per row. The pattern is always structurally
/// symmetric; values are symmetric for everything built from graphs and
/// covariances, while similarity_scale produces a pattern-symmetric
/// matrix with general values.
class SparseSymMatrix {
 public:
  using Entry = std::pair<int, double>;

  SparseSymMatrix() = default;
  explicit SparseSymMatrix(int n) : rows_(static_cast<std::size_t>(n)) {}

  static SparseSymMatrix identity(int n);

  /// Builds from triplets. Each unordered pair may be given once (either
  /// orientation) or twice with equal values; duplicates and asymmetric
  /// pairs are rejected. Zero values are dropped.
  static SparseSymMatrix from_triplets(int n, const std::vector<Triplet>& entries);

  /// Builds directly from per-row entry lists. The caller guarantees
  /// sorted columns and a structurally symmetric pattern.
  static SparseSymMatrix from_rows(std::vector<std::vector<Entry>> rows);

  int size() const { return static_cast<int>(rows_.size()); }
  std::size_t nnz() const;

  const std::vector<Entry>& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }

  /// Value at (i, j); 0 when the entry is absent.
  double at(int i, int j) const;

  /// Inserts or overwrites (i, j) and (j, i). Writing 0 removes the entry.
  void set(int i, int j, double value);

  void add_to_diagonal(int i, double delta);

  std::vector<double> diagonal() const;
  std::vector<double> matvec(const std::vector<double>& x) const;
  double quadratic_form(const std::vector<double>& x) const;
  double frobenius_norm() const;

 private:
  std::vector<std::vector<Entry>> rows_;
};

/// Per-row Gershgorin disc left-ends: A_ii - sum_{j != i} |A_ij|.
/// Their minimum lower-bounds the smallest eigenvalue.
std::vector<double> disc_left_ends(const SparseSymMatrix& a);

/// diag(s) * A * diag(s)^{-1}. Eigenvalues and pattern are preserved;
/// all scalars must be nonzero.
SparseSymMatrix similarity_scale(const SparseSymMatrix& a, const std::vector<double>& scalars);

SparseSymMatrix subtract(const SparseSymMatrix& a, const SparseSymMatrix& b);
SparseSymMatrix scaled(const SparseSymMatrix& a, double factor);

/// Matrix Market coordinate format (real symmetric). Values are written
/// with 17 significant digits so write/read round-trips exactly.
void write_matrix_market(std::ostream& os, const SparseSymMatrix& a);
SparseSymMatrix read_matrix_market(std::istream& is);
void write_matrix_market_file(const std::string& path, const SparseSymMatrix& a);
SparseSymMatrix read_matrix_market_file(const std::string& path);

/// Formats a double with 17 significant digits (round-trips exactly).
std::string format_value(double v);

}  // namespace sgs
