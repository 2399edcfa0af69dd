#include "sgs/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sgs {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SparseSymMatrix SparseSymMatrix::identity(int n) {
  SparseSymMatrix a(n);
  for (int i = 0; i < n; ++i) a.rows_[static_cast<std::size_t>(i)].push_back({i, 1.0});
  return a;
}

SparseSymMatrix SparseSymMatrix::from_triplets(int n, const std::vector<Triplet>& entries) {
  if (n < 0) throw std::invalid_argument("from_triplets: negative dimension");
  std::map<std::pair<int, int>, double> canonical;
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw std::invalid_argument("from_triplets: index out of range");
    if (t.value == 0.0) continue;
    std::pair<int, int> key{std::min(t.row, t.col), std::max(t.row, t.col)};
    auto [it, inserted] = canonical.insert({key, t.value});
    if (!inserted && it->second != t.value)
      throw std::invalid_argument("from_triplets: conflicting values for symmetric pair");
  }
  SparseSymMatrix a(n);
  for (const auto& [key, value] : canonical) {
    a.rows_[static_cast<std::size_t>(key.first)].push_back({key.second, value});
    if (key.first != key.second)
      a.rows_[static_cast<std::size_t>(key.second)].push_back({key.first, value});
  }
  for (auto& row : a.rows_)
    std::sort(row.begin(), row.end(),
              [](const Entry& x, const Entry& y) { return x.first < y.first; });
  return a;
}

SparseSymMatrix SparseSymMatrix::from_rows(std::vector<std::vector<Entry>> rows) {
  SparseSymMatrix a;
  a.rows_ = std::move(rows);
  return a;
}

std::size_t SparseSymMatrix::nnz() const {
  std::size_t count = 0;
  for (const auto& row : rows_) count += row.size();
  return count;
}

double SparseSymMatrix::at(int i, int j) const {
  const auto& row = rows_[static_cast<std::size_t>(i)];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const Entry& e, int col) { return e.first < col; });
  if (it != row.end() && it->first == j) return it->second;
  return 0.0;
}

void SparseSymMatrix::set(int i, int j, double value) {
  auto put = [this](int r, int c, double v) {
    auto& row = rows_[static_cast<std::size_t>(r)];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      if (v == 0.0)
        row.erase(it);
      else
        it->second = v;
    } else if (v != 0.0) {
      row.insert(it, {c, v});
    }
  };
  put(i, j, value);
  if (i != j) put(j, i, value);
}

void SparseSymMatrix::add_to_diagonal(int i, double delta) {
  set(i, i, at(i, i) + delta);
}

std::vector<double> SparseSymMatrix::diagonal() const {
  std::vector<double> d(rows_.size(), 0.0);
  for (int i = 0; i < size(); ++i) d[static_cast<std::size_t>(i)] = at(i, i);
  return d;
}

std::vector<double> SparseSymMatrix::matvec(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != size())
    throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<double> y(x.size(), 0.0);
  for (int i = 0; i < size(); ++i) {
    double acc = 0.0;
    for (const Entry& e : rows_[static_cast<std::size_t>(i)])
      acc += e.second * x[static_cast<std::size_t>(e.first)];
    y[static_cast<std::size_t>(i)] = acc;
  }
  return y;
}

double SparseSymMatrix::quadratic_form(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != size())
    throw std::invalid_argument("quadratic_form: dimension mismatch");
  double acc = 0.0;
  for (int i = 0; i < size(); ++i) {
    double row_acc = 0.0;
    for (const Entry& e : rows_[static_cast<std::size_t>(i)])
      row_acc += e.second * x[static_cast<std::size_t>(e.first)];
    acc += x[static_cast<std::size_t>(i)] * row_acc;
  }
  return acc;
}

double SparseSymMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& row : rows_)
    for (const Entry& e : row) acc += e.second * e.second;
  return std::sqrt(acc);
}

std::vector<double> disc_left_ends(const SparseSymMatrix& a) {
  std::vector<double> ends(static_cast<std::size_t>(a.size()), 0.0);
  for (int i = 0; i < a.size(); ++i) {
    double center = 0.0;
    double radius = 0.0;
    for (const auto& [col, value] : a.row(i)) {
      if (col == i)
        center = value;
      else
        radius += std::abs(value);
    }
    ends[static_cast<std::size_t>(i)] = center - radius;
  }
  return ends;
}

SparseSymMatrix similarity_scale(const SparseSymMatrix& a, const std::vector<double>& scalars) {
  if (static_cast<int>(scalars.size()) != a.size())
    throw std::invalid_argument("similarity_scale: dimension mismatch");
  for (double s : scalars)
    if (s == 0.0) throw std::invalid_argument("similarity_scale: zero scalar");
  std::vector<std::vector<SparseSymMatrix::Entry>> rows(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) {
    rows[static_cast<std::size_t>(i)].reserve(a.row(i).size());
    for (const auto& [col, value] : a.row(i)) {
      double scaled_value =
          scalars[static_cast<std::size_t>(i)] * value / scalars[static_cast<std::size_t>(col)];
      rows[static_cast<std::size_t>(i)].push_back({col, scaled_value});
    }
  }
  return SparseSymMatrix::from_rows(std::move(rows));
}

SparseSymMatrix subtract(const SparseSymMatrix& a, const SparseSymMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("subtract: dimension mismatch");
  SparseSymMatrix result(a.size());
  for (int i = 0; i < a.size(); ++i) {
    const auto& ra = a.row(i);
    const auto& rb = b.row(i);
    std::size_t pa = 0, pb = 0;
    while (pa < ra.size() || pb < rb.size()) {
      int ca = pa < ra.size() ? ra[pa].first : a.size();
      int cb = pb < rb.size() ? rb[pb].first : a.size();
      int col = std::min(ca, cb);
      double value = (ca == col ? ra[pa++].second : 0.0) - (cb == col ? rb[pb++].second : 0.0);
      if (col >= i && value != 0.0) result.set(i, col, value);
    }
  }
  return result;
}

SparseSymMatrix scaled(const SparseSymMatrix& a, double factor) {
  std::vector<std::vector<SparseSymMatrix::Entry>> rows(static_cast<std::size_t>(a.size()));
  if (factor != 0.0) {
    for (int i = 0; i < a.size(); ++i) {
      rows[static_cast<std::size_t>(i)].reserve(a.row(i).size());
      for (const auto& [col, value] : a.row(i))
        rows[static_cast<std::size_t>(i)].push_back({col, factor * value});
    }
  }
  return SparseSymMatrix::from_rows(std::move(rows));
}

void write_matrix_market(std::ostream& os, const SparseSymMatrix& a) {
  os << "%%MatrixMarket matrix coordinate real symmetric\n";
  std::size_t lower = 0;
  for (int i = 0; i < a.size(); ++i)
    for (const auto& [col, value] : a.row(i))
      if (col <= i) ++lower;
  os << a.size() << ' ' << a.size() << ' ' << lower << '\n';
  for (int i = 0; i < a.size(); ++i)
    for (const auto& [col, value] : a.row(i))
      if (col <= i) os << (i + 1) << ' ' << (col + 1) << ' ' << format_value(value) << '\n';
}

SparseSymMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw std::invalid_argument("matrix market: missing header");
  std::istringstream header(line);
  std::string tag, object, format, field, symmetry;
  header >> tag >> object >> format >> field >> symmetry;
  if (object != "matrix" || format != "coordinate" || field != "real")
    throw std::invalid_argument("matrix market: unsupported header: " + line);
  if (symmetry != "symmetric" && symmetry != "general")
    throw std::invalid_argument("matrix market: unsupported symmetry: " + symmetry);
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream dims(line);
  int rows = 0, cols = 0;
  std::size_t count = 0;
  if (!(dims >> rows >> cols >> count) || rows != cols)
    throw std::invalid_argument("matrix market: bad size line");
  std::vector<Triplet> triplets;
  triplets.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (!std::getline(is, line))
      throw std::invalid_argument("matrix market: truncated entry list");
    std::istringstream entry(line);
    int i = 0, j = 0;
    double v = 0.0;
    if (!(entry >> i >> j >> v))
      throw std::invalid_argument("matrix market: malformed entry: " + line);
    triplets.push_back({i - 1, j - 1, v});
  }
  return SparseSymMatrix::from_triplets(rows, triplets);
}

void write_matrix_market_file(const std::string& path, const SparseSymMatrix& a) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open for writing: " + path);
  write_matrix_market(os, a);
}

SparseSymMatrix read_matrix_market_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open: " + path);
  return read_matrix_market(is);
}

}  // namespace sgs
