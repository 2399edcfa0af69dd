#include "sgs/gdas.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <stdexcept>

namespace sgs {

namespace {

constexpr double kSearchTolerance = 1e-6;

struct CoveragePass {
  const SparseSymMatrix& b;  // mu * L_p
  double threshold;
  std::vector<double> scalars;
  std::vector<char> visited;
  std::vector<char> sampled;
  std::vector<int> samples;

  CoveragePass(const SparseSymMatrix& matrix, double t)
      : b(matrix),
        threshold(t),
        scalars(static_cast<std::size_t>(matrix.size()), 1.0),
        visited(static_cast<std::size_t>(matrix.size()), 0),
        sampled(static_cast<std::size_t>(matrix.size()), 0) {}

  double center(int i) const {
    return b.at(i, i) + (sampled[static_cast<std::size_t>(i)] ? 1.0 : 0.0);
  }

  // Radius of row i at unit self-scalar: sum over neighbors of |B_ij| / t_j.
  double unit_radius(int i) const {
    double r = 0.0;
    for (const auto& [col, value] : b.row(i))
      if (col != i) r += std::abs(value) / scalars[static_cast<std::size_t>(col)];
    return r;
  }

  double left_end(int i) const {
    return center(i) - scalars[static_cast<std::size_t>(i)] * unit_radius(i);
  }

  // Marks i covered with the largest scalar that keeps its left-end at the
  // threshold, then expands breadth-first through neighbors that can reach
  // the threshold with a scalar >= 1.
  void cover_and_expand(int start) {
    visited[static_cast<std::size_t>(start)] = 1;
    double r = unit_radius(start);
    double margin = center(start) - threshold;
    if (r > 0.0 && margin > 0.0) scalars[static_cast<std::size_t>(start)] = margin / r;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (const auto& [v, value] : b.row(u)) {
        if (v == u || visited[static_cast<std::size_t>(v)]) continue;
        double rv = unit_radius(v);
        double mv = center(v) - threshold;
        if (rv == 0.0) {
          if (mv >= 0.0) visited[static_cast<std::size_t>(v)] = 1;
          continue;
        }
        double t = mv / rv;
        if (t >= 1.0) {
          scalars[static_cast<std::size_t>(v)] = t;
          visited[static_cast<std::size_t>(v)] = 1;
          queue.push_back(v);
        }
      }
    }
  }
};

}  // namespace

CoverageResult gdas_coverage(const AlignedOperator& aligned, double mu, double threshold) {
  if (mu <= 0.0) throw std::invalid_argument("gdas_coverage: mu must be positive");
  const int n = aligned.l_p.size();
  SparseSymMatrix b = scaled(aligned.l_p, mu);

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    int d = 0;
    for (const auto& [col, value] : b.row(i))
      if (col != i) ++d;
    degree[static_cast<std::size_t>(i)] = d;
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int c) {
    if (degree[static_cast<std::size_t>(a)] != degree[static_cast<std::size_t>(c)])
      return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(c)];
    return a < c;
  });

  CoveragePass pass(b, threshold);
  for (int node : order) {
    if (pass.visited[static_cast<std::size_t>(node)]) continue;
    if (pass.left_end(node) >= threshold) {
      pass.visited[static_cast<std::size_t>(node)] = 1;
      continue;
    }
    pass.sampled[static_cast<std::size_t>(node)] = 1;
    pass.samples.push_back(node);
    pass.cover_and_expand(node);
  }

  CoverageResult result;
  result.achieved = true;
  for (int i = 0; i < n; ++i) {
    if (pass.left_end(i) < threshold - 1e-12) {
      result.achieved = false;
      break;
    }
  }
  result.samples = std::move(pass.samples);
  result.scalars = std::move(pass.scalars);
  return result;
}

SampleSet gdas_sample(const AlignedOperator& aligned, double mu, int budget) {
  if (mu <= 0.0) throw std::invalid_argument("gdas_sample: mu must be positive");
  const int n = aligned.l_p.size();
  if (budget < 0 || budget > n) throw std::invalid_argument("gdas_sample: budget out of range");

  double lambda_floor = mu * aligned.lambda_min;
  if (budget == 0)
    return {{}, lambda_floor, mu, std::vector<double>(static_cast<std::size_t>(n), 1.0)};

  // Start the bracket at the actual aligned floor so the first probe is
  // trivially satisfiable even with residual alignment error.
  double min_left = lambda_floor;
  for (double end : disc_left_ends(aligned.l_p)) min_left = std::min(min_left, mu * end);

  double lo = min_left;
  double hi = lambda_floor + 1.0;
  CoverageResult best = gdas_coverage(aligned, mu, lo);
  while (hi - lo >= kSearchTolerance) {
    double mid = 0.5 * (lo + hi);
    CoverageResult probe = gdas_coverage(aligned, mu, mid);
    if (probe.achieved && static_cast<int>(probe.samples.size()) <= budget) {
      lo = mid;
      best = std::move(probe);
    } else {
      hi = mid;
    }
  }
  double t_final = std::max(lo, lambda_floor - 1e-12);
  return {std::move(best.samples), t_final, mu, std::move(best.scalars)};
}

void write_sample_set(std::ostream& os, const SampleSet& s) {
  os << "sampleset\n";
  os << "mu " << format_value(s.mu) << '\n';
  os << "t_final " << format_value(s.t_final) << '\n';
  os << "nodes " << s.nodes.size() << '\n';
  for (int node : s.nodes) os << node << '\n';
  os << "scalars " << s.scalars_final.size() << '\n';
  for (double t : s.scalars_final) os << format_value(t) << '\n';
}

SampleSet read_sample_set(std::istream& is) {
  std::string tag;
  SampleSet s;
  if (!(is >> tag) || tag != "sampleset")
    throw std::invalid_argument("sample set: missing header");
  if (!(is >> tag >> s.mu) || tag != "mu") throw std::invalid_argument("sample set: missing mu");
  if (!(is >> tag >> s.t_final) || tag != "t_final")
    throw std::invalid_argument("sample set: missing t_final");
  std::size_t count = 0;
  if (!(is >> tag >> count) || tag != "nodes")
    throw std::invalid_argument("sample set: missing node list");
  s.nodes.resize(count);
  for (auto& node : s.nodes)
    if (!(is >> node)) throw std::invalid_argument("sample set: truncated node list");
  if (!(is >> tag >> count) || tag != "scalars")
    throw std::invalid_argument("sample set: missing scalars");
  s.scalars_final.resize(count);
  for (auto& t : s.scalars_final)
    if (!(is >> t)) throw std::invalid_argument("sample set: truncated scalars");
  return s;
}

void write_sample_set_file(const std::string& path, const SampleSet& s) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open for writing: " + path);
  write_sample_set(os, s);
}

SampleSet read_sample_set_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open: " + path);
  return read_sample_set(is);
}

}  // namespace sgs
