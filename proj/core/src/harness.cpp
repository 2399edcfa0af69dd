#include "sgs/harness.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "sgs/dense_eig.hpp"
#include "sgs/reconstruct.hpp"
#include "sgs/rng.hpp"
#include "sgs/solvers.hpp"

namespace sgs {

namespace {

// Stream tags for deriving per-stage RNG streams from (seed, trial).
enum StreamTag : std::uint64_t {
  kTagGraph = 1,
  kTagPerturb = 2,
  kTagGmrf = 3,
  kTagSplit = 4,
  kTagSampler = 5,
  kTagNoise = 6,
};

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

}  // namespace

std::string NoiseSpec::label() const {
  switch (kind) {
    case Kind::None:
      return "none";
    case Kind::Flip:
      return "flip:" + format_value(param);
    case Kind::Gauss:
      return "gauss:" + format_value(param);
  }
  return "none";
}

NoiseSpec NoiseSpec::parse(const std::string& text) {
  if (text == "none" || text.empty()) return {Kind::None, 0.0};
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("noise spec: expected none, flip:<p>, or gauss:<sigma>: " + text);
  std::string kind = text.substr(0, colon);
  double param = std::stod(text.substr(colon + 1));
  if (kind == "flip") {
    if (param < 0.0 || param > 1.0)
      throw std::invalid_argument("noise spec: flip probability must be in [0, 1]");
    return {Kind::Flip, param};
  }
  if (kind == "gauss") {
    if (param < 0.0) throw std::invalid_argument("noise spec: sigma must be nonnegative");
    return {Kind::Gauss, param};
  }
  throw std::invalid_argument("noise spec: unknown kind: " + kind);
}

std::string sampler_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Proposed:
      return "proposed";
    case SamplerKind::Random:
      return "random";
    case SamplerKind::DegreeGreedy:
      return "degree_greedy";
  }
  return "proposed";
}

SignedGraph generate_balanced_graph(int n, double avg_degree, double weight_lo, double weight_hi,
                                    double neg_fraction, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_balanced_graph: need at least one node");
  if (avg_degree >= n) throw std::invalid_argument("generate_balanced_graph: avg_degree >= n");
  if (weight_lo <= 0.0 || weight_hi < weight_lo)
    throw std::invalid_argument("generate_balanced_graph: bad weight range");
  if (neg_fraction < 0.0 || neg_fraction > 1.0)
    throw std::invalid_argument("generate_balanced_graph: neg_fraction must be in [0, 1]");

  Rng rng(seed);
  std::vector<int> beta(static_cast<std::size_t>(n));
  for (int& b : beta) b = rng.uniform() < neg_fraction ? -1 : 1;

  std::set<std::pair<int, int>> present;
  std::vector<SignedEdge> edges;
  auto add_edge = [&](int i, int j) {
    int a = std::min(i, j), b = std::max(i, j);
    if (!present.insert({a, b}).second) return false;
    double magnitude = rng.uniform(weight_lo, weight_hi);
    double sign = beta[static_cast<std::size_t>(a)] * beta[static_cast<std::size_t>(b)];
    edges.push_back({a, b, sign * magnitude});
    return true;
  };

  // Random attachment tree keeps the graph connected, extra edges bring the
  // average degree up to the target.
  for (int v = 1; v < n; ++v) add_edge(v, rng.uniform_int(0, v - 1));
  auto target = static_cast<std::size_t>(std::llround(0.5 * avg_degree * n));
  int attempts_left = 50 * n + 1000;
  while (edges.size() < target && attempts_left-- > 0) {
    int i = rng.uniform_int(0, n - 1);
    int j = rng.uniform_int(0, n - 1);
    if (i != j) add_edge(i, j);
  }
  return SignedGraph(n, std::move(edges));
}

SignedGraph perturb_to_unbalanced(const SignedGraph& g, int flip_count, std::uint64_t seed) {
  auto edge_count = static_cast<int>(g.edges().size());
  if (flip_count < 1 || flip_count > edge_count)
    throw std::invalid_argument("perturb_to_unbalanced: flip count out of range");
  auto labels = g.component_labels();
  int components = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  if (edge_count <= g.size() - components)
    throw std::invalid_argument("perturb_to_unbalanced: acyclic graph stays balanced");

  Rng rng(seed);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<int> order(static_cast<std::size_t>(edge_count));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<SignedEdge> flipped = g.edges();
    for (int k = 0; k < flip_count; ++k) {
      auto idx = static_cast<std::size_t>(order[static_cast<std::size_t>(k)]);
      flipped[idx].w = -flipped[idx].w;
    }
    SignedGraph candidate(g.size(), std::move(flipped), g.self_loops());
    if (!is_balanced(candidate)) return candidate;
  }
  throw std::runtime_error("perturb_to_unbalanced: no unbalanced signing found");
}

SignalMatrix gmrf_sample(const SparseSymMatrix& l, double delta, int count, std::uint64_t seed) {
  const int n = l.size();
  if (count < 1) throw std::invalid_argument("gmrf_sample: need at least one draw");
  if (n > kDenseOracleLimit)
    throw std::invalid_argument("gmrf_sample: dimension exceeds the dense factorization limit");

  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (const auto& [col, value] : l.row(i)) dense(i, col) = value;
  dense.diagonal().array() += delta;
  Eigen::LLT<Eigen::MatrixXd> llt(dense);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("gmrf_sample: shifted Laplacian is not positive definite");

  Rng rng(seed);
  SignalMatrix x;
  x.num_signals = count;
  x.num_nodes = n;
  x.data.resize(static_cast<std::size_t>(count) * static_cast<std::size_t>(n));
  Eigen::VectorXd z(n);
  for (int s = 0; s < count; ++s) {
    for (int i = 0; i < n; ++i) z(i) = rng.normal();
    // cov(x) = (R^T R)^{-1} for the upper factor R, so x = R^{-1} z.
    Eigen::VectorXd draw = llt.matrixU().solve(z);
    for (int i = 0; i < n; ++i) x.at(s, i) = draw(i);
  }
  return x;
}

std::vector<std::vector<double>> column_alphabets(const SignalMatrix& x) {
  std::vector<std::vector<double>> alphabets(static_cast<std::size_t>(x.num_nodes));
  for (int i = 0; i < x.num_nodes; ++i) {
    std::set<double> values;
    for (int s = 0; s < x.num_signals; ++s) values.insert(x.at(s, i));
    alphabets[static_cast<std::size_t>(i)].assign(values.begin(), values.end());
  }
  return alphabets;
}

SignalMatrix add_noise(const SignalMatrix& x, const NoiseSpec& noise, std::uint64_t seed) {
  return add_noise(x, noise, seed, column_alphabets(x));
}

SignalMatrix add_noise(const SignalMatrix& x, const NoiseSpec& noise, std::uint64_t seed,
                       const std::vector<std::vector<double>>& alphabets) {
  SignalMatrix out = x;
  if (noise.kind == NoiseSpec::Kind::None) return out;
  if (noise.kind == NoiseSpec::Kind::Flip &&
      static_cast<int>(alphabets.size()) != x.num_nodes)
    throw std::invalid_argument("add_noise: alphabet count mismatch");

  Rng rng(seed);
  for (int s = 0; s < x.num_signals; ++s) {
    for (int i = 0; i < x.num_nodes; ++i) {
      if (noise.kind == NoiseSpec::Kind::Gauss) {
        out.at(s, i) += noise.param * rng.normal();
        continue;
      }
      if (rng.uniform() >= noise.param) continue;
      const auto& alphabet = alphabets[static_cast<std::size_t>(i)];
      std::vector<double> others;
      others.reserve(alphabet.size());
      for (double v : alphabet)
        if (v != out.at(s, i)) others.push_back(v);
      if (others.empty()) continue;
      out.at(s, i) = others[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(others.size()) - 1))];
    }
  }
  return out;
}

SignalMatrix ingest_csv_stream(std::istream& is, bool header) {
  SignalMatrix x;
  std::string line;
  int line_no = 0;
  bool want_header = header;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    if (want_header) {
      x.labels = fields;
      want_header = false;
      continue;
    }
    if (x.num_nodes == 0) {
      x.num_nodes = static_cast<int>(fields.size());
    } else if (static_cast<int>(fields.size()) != x.num_nodes) {
      throw std::invalid_argument("csv: ragged row at line " + std::to_string(line_no));
    }
    for (const std::string& cell : fields) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("csv: non-numeric cell at line " + std::to_string(line_no));
      }
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size())
        throw std::invalid_argument("csv: non-numeric cell at line " + std::to_string(line_no));
      x.data.push_back(value);
    }
    ++x.num_signals;
  }
  if (x.num_signals == 0) throw std::invalid_argument("csv: no data rows");
  if (header && static_cast<int>(x.labels.size()) != x.num_nodes)
    throw std::invalid_argument("csv: header width does not match data rows");
  return x;
}

SignalMatrix ingest_csv(const std::string& path, bool header) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open: " + path);
  return ingest_csv_stream(is, header);
}

void export_csv(std::ostream& os, const SignalMatrix& x, bool header) {
  if (header) {
    for (int i = 0; i < x.num_nodes; ++i) {
      if (i) os << ',';
      os << (i < static_cast<int>(x.labels.size()) ? x.labels[static_cast<std::size_t>(i)]
                                                   : "node" + std::to_string(i));
    }
    os << '\n';
  }
  for (int s = 0; s < x.num_signals; ++s) {
    for (int i = 0; i < x.num_nodes; ++i) {
      if (i) os << ',';
      os << format_value(x.at(s, i));
    }
    os << '\n';
  }
}

SampleSet baseline_random(int n, int budget, std::uint64_t seed) {
  if (budget < 0 || budget > n) throw std::invalid_argument("baseline_random: bad budget");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  Rng rng(seed);
  rng.shuffle(pool);
  pool.resize(static_cast<std::size_t>(budget));
  return {std::move(pool), 0.0, 0.0, {}};
}

SampleSet baseline_degree_greedy(const SignedGraph& g, int budget) {
  if (budget < 0 || budget > g.size())
    throw std::invalid_argument("baseline_degree_greedy: bad budget");
  std::vector<double> wdeg(static_cast<std::size_t>(g.size()), 0.0);
  for (const auto& e : g.edges()) {
    wdeg[static_cast<std::size_t>(e.i)] += std::abs(e.w);
    wdeg[static_cast<std::size_t>(e.j)] += std::abs(e.w);
  }
  std::vector<int> order(static_cast<std::size_t>(g.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (wdeg[static_cast<std::size_t>(a)] != wdeg[static_cast<std::size_t>(b)])
      return wdeg[static_cast<std::size_t>(a)] > wdeg[static_cast<std::size_t>(b)];
    return a < b;
  });
  order.resize(static_cast<std::size_t>(budget));
  return {std::move(order), 0.0, 0.0, {}};
}

namespace {

// Balanced + aligned view of a (possibly disconnected) signed graph, built
// once and sampled at many budgets.
struct AlignedGraph {
  BalanceResult balanced;
  std::vector<std::vector<int>> component_nodes;
  std::vector<AlignedOperator> aligned;  // one per component
  double balance_ms = 0.0;
  double align_ms = 0.0;

  explicit AlignedGraph(const SignedGraph& g, int seed_node) {
    double t0 = now_ms();
    balanced = balance_components(g, seed_node);
    balance_ms = now_ms() - t0;
    t0 = now_ms();
    auto labels = balanced.graph.component_labels();
    int components = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    component_nodes.resize(static_cast<std::size_t>(components));
    for (int v = 0; v < balanced.graph.size(); ++v)
      component_nodes[static_cast<std::size_t>(labels[static_cast<std::size_t>(v)])].push_back(v);

    for (const auto& nodes : component_nodes) {
      std::vector<int> local(static_cast<std::size_t>(balanced.graph.size()), -1);
      for (std::size_t l = 0; l < nodes.size(); ++l)
        local[static_cast<std::size_t>(nodes[l])] = static_cast<int>(l);
      std::vector<SignedEdge> edges;
      for (const auto& e : balanced.graph.edges())
        if (local[static_cast<std::size_t>(e.i)] >= 0 &&
            local[static_cast<std::size_t>(e.j)] >= 0)
          edges.push_back({local[static_cast<std::size_t>(e.i)],
                           local[static_cast<std::size_t>(e.j)], e.w});
      std::vector<double> loops;
      loops.reserve(nodes.size());
      for (int v : nodes) loops.push_back(balanced.graph.self_loops()[static_cast<std::size_t>(v)]);
      SignedGraph sub(static_cast<int>(nodes.size()), std::move(edges), std::move(loops));
      aligned.push_back(gdpa_align(generalized_laplacian(sub)));
    }
    align_ms = now_ms() - t0;
  }

  SampleSet sample(double mu, int budget) const {
    const int n = balanced.graph.size();
    if (budget < 0 || budget > n) throw std::invalid_argument("sample: budget out of range");
    if (aligned.size() == 1) {
      SampleSet s = gdas_sample(aligned.front(), mu, budget);
      std::vector<int> nodes;
      nodes.reserve(s.nodes.size());
      for (int local : s.nodes)
        nodes.push_back(component_nodes.front()[static_cast<std::size_t>(local)]);
      s.nodes = std::move(nodes);
      return s;
    }

    // Budgets proportional to component size, remainder to the largest.
    std::vector<int> share(aligned.size(), 0);
    int assigned = 0;
    for (std::size_t c = 0; c < aligned.size(); ++c) {
      share[c] = static_cast<int>(static_cast<long long>(budget) *
                                  static_cast<long long>(component_nodes[c].size()) / n);
      assigned += share[c];
    }
    std::vector<std::size_t> by_size(aligned.size());
    std::iota(by_size.begin(), by_size.end(), std::size_t{0});
    std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
      return component_nodes[a].size() > component_nodes[b].size();
    });
    for (std::size_t pick = 0; assigned < budget; pick = (pick + 1) % by_size.size()) {
      std::size_t c = by_size[pick];
      if (share[c] < static_cast<int>(component_nodes[c].size())) {
        ++share[c];
        ++assigned;
      }
    }

    SampleSet merged;
    merged.mu = mu;
    merged.t_final = std::numeric_limits<double>::infinity();
    merged.scalars_final.assign(static_cast<std::size_t>(n), 1.0);
    for (std::size_t c = 0; c < aligned.size(); ++c) {
      SampleSet part = gdas_sample(aligned[c], mu, share[c]);
      merged.t_final = std::min(merged.t_final, part.t_final);
      for (int local : part.nodes)
        merged.nodes.push_back(component_nodes[c][static_cast<std::size_t>(local)]);
      for (std::size_t l = 0; l < part.scalars_final.size(); ++l)
        merged.scalars_final[static_cast<std::size_t>(component_nodes[c][l])] =
            part.scalars_final[l];
    }
    return merged;
  }
};

}  // namespace

SampleSet sample_signed_graph(const SignedGraph& g, double mu, int budget, int seed_node) {
  AlignedGraph context(g, seed_node);
  return context.sample(mu, budget);
}

namespace {

SignalMatrix rows_subset(const SignalMatrix& x, const std::vector<int>& rows) {
  SignalMatrix out;
  out.num_signals = static_cast<int>(rows.size());
  out.num_nodes = x.num_nodes;
  out.labels = x.labels;
  out.data.reserve(rows.size() * static_cast<std::size_t>(x.num_nodes));
  for (int r : rows)
    for (int i = 0; i < x.num_nodes; ++i) out.data.push_back(x.at(r, i));
  return out;
}

SignalMatrix synthesize_signals(const SyntheticSource& src, std::uint64_t seed,
                                std::uint64_t trial) {
  SignedGraph balanced = generate_balanced_graph(
      src.n, src.avg_degree, src.weight_lo, src.weight_hi, src.neg_fraction,
      Rng::from_keys({seed, trial, kTagGraph}).next_u64());
  int flips = src.flip_count > 0
                  ? src.flip_count
                  : std::max(1, static_cast<int>(balanced.edges().size() * 3 / 20));
  SignedGraph unbalanced = perturb_to_unbalanced(
      balanced, flips, Rng::from_keys({seed, trial, kTagPerturb}).next_u64());

  // Ground-truth precision must be PD for the GMRF; raise the self-loops
  // just enough to leave a 0.1 margin.
  SparseSymMatrix l_true = generalized_laplacian(unbalanced);
  double lambda_min = dense_eig(l_true).eigenvalues.front();
  double margin = 0.1;
  SignedGraph source_graph = unbalanced;
  if (lambda_min < margin) {
    std::vector<double> loops = unbalanced.self_loops();
    for (double& s : loops) s += margin - lambda_min;
    source_graph = SignedGraph(unbalanced.size(), unbalanced.edges(), std::move(loops));
  }
  int count = src.signals > 0 ? src.signals : 10 * src.n;
  return gmrf_sample(generalized_laplacian(source_graph), 0.0, count,
                     Rng::from_keys({seed, trial, kTagGmrf}).next_u64());
}

double auto_ridge(const SparseSymMatrix& cov, int train_count) {
  const int n = cov.size();
  double trace = 0.0;
  double min_diag = std::numeric_limits<double>::infinity();
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = cov.at(i, i);
    trace += d;
    min_diag = std::min(min_diag, d);
    max_diag = std::max(max_diag, d);
  }
  bool singular = train_count < n || min_diag <= 1e-12 * std::max(1.0, max_diag);
  return singular ? 1e-6 * trace / std::max(1, n) : 0.0;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  if (cfg.split_fraction <= 0.0 || cfg.split_fraction >= 1.0)
    throw std::invalid_argument("run_experiment: split_fraction must be in (0, 1)");
  if (cfg.budgets.empty()) throw std::invalid_argument("run_experiment: no budgets");
  if (cfg.samplers.empty()) throw std::invalid_argument("run_experiment: no samplers");
  if (cfg.noise.empty()) throw std::invalid_argument("run_experiment: no noise levels");

  std::optional<SignalMatrix> csv_signals;
  if (const auto* csv = std::get_if<CsvSource>(&cfg.source))
    csv_signals = ingest_csv(csv->path, csv->header);

  ExperimentResult result;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    // Every (sampler, budget, noise) cell of the grid gets exactly one row;
    // a stage failure marks the cells it prevented rather than aborting.
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> produced;
    auto emit_error = [&](const std::string& message) {
      for (std::size_t si = 0; si < cfg.samplers.size(); ++si)
        for (std::size_t bi = 0; bi < cfg.budgets.size(); ++bi)
          for (std::size_t ni = 0; ni < cfg.noise.size(); ++ni) {
            if (produced.count({si, bi, ni})) continue;
            CellResult cell;
            cell.sampler = sampler_name(cfg.samplers[si]);
            cell.budget = cfg.budgets[bi];
            cell.noise = cfg.noise[ni].label();
            cell.trial = trial;
            cell.mse = std::numeric_limits<double>::quiet_NaN();
            cell.status = message;
            result.cells.push_back(std::move(cell));
          }
    };

    try {
      SignalMatrix signals =
          csv_signals ? *csv_signals
                      : synthesize_signals(std::get<SyntheticSource>(cfg.source), cfg.seed,
                                           static_cast<std::uint64_t>(trial));
      const int n = signals.num_nodes;
      for (int budget : cfg.budgets)
        if (budget < 0 || budget > n)
          throw std::invalid_argument("run_experiment: budget out of range for " +
                                      std::to_string(n) + " nodes");

      // Split by signal, uniformly at random per trial.
      std::vector<int> order(static_cast<std::size_t>(signals.num_signals));
      std::iota(order.begin(), order.end(), 0);
      Rng split_rng = Rng::from_keys({cfg.seed, static_cast<std::uint64_t>(trial), kTagSplit});
      split_rng.shuffle(order);
      int train_count = static_cast<int>(std::lround(cfg.split_fraction * signals.num_signals));
      train_count = std::max(1, std::min(signals.num_signals - 1, train_count));
      std::vector<int> train_rows(order.begin(), order.begin() + train_count);
      std::vector<int> test_rows(order.begin() + train_count, order.end());
      SignalMatrix train = rows_subset(signals, train_rows);
      SignalMatrix test = rows_subset(signals, test_rows);
      auto alphabets = column_alphabets(train);

      StageTimes times;
      double t0 = now_ms();
      SparseSymMatrix cov = empirical_covariance(train, 0.0);
      double ridge = auto_ridge(cov, train_count);
      if (ridge > 0.0) cov = empirical_covariance(train, ridge);
      PrecisionEstimate estimate = glasso(cov, cfg.phi, cfg.glasso_tol, cfg.glasso_max_iter);
      SignedGraph learned = precision_to_graph(estimate.precision);
      times.learn_ms = now_ms() - t0;

      AlignedGraph aligned_graph(learned, 0);
      times.balance_ms = aligned_graph.balance_ms;
      times.align_ms = aligned_graph.align_ms;

      double re = relative_error(combinatorial_laplacian(learned),
                                 combinatorial_laplacian(aligned_graph.balanced.graph));
      double dcs = deltacon(learned, aligned_graph.balanced.graph);

      SparseSymMatrix l_reconstruct = cfg.reconstruct_with == ReconstructWith::Original
                                          ? generalized_laplacian(learned)
                                          : generalized_laplacian(aligned_graph.balanced.graph);

      for (std::size_t si = 0; si < cfg.samplers.size(); ++si) {
        for (std::size_t bi = 0; bi < cfg.budgets.size(); ++bi) {
          int budget = cfg.budgets[bi];
          double ts = now_ms();
          SampleSet samples;
          std::string sampler_error;
          try {
            switch (cfg.samplers[si]) {
              case SamplerKind::Proposed:
                samples = aligned_graph.sample(cfg.mu, budget);
                break;
              case SamplerKind::Random:
                samples = baseline_random(
                    n, budget,
                    Rng::from_keys({cfg.seed, static_cast<std::uint64_t>(trial), kTagSampler,
                                    static_cast<std::uint64_t>(bi)})
                        .next_u64());
                break;
              case SamplerKind::DegreeGreedy:
                samples = baseline_degree_greedy(learned, budget);
                break;
            }
          } catch (const std::exception& e) {
            sampler_error = e.what();
          }
          double sample_ms = now_ms() - ts;

          for (std::size_t ni = 0; ni < cfg.noise.size(); ++ni) {
            CellResult cell;
            cell.sampler = sampler_name(cfg.samplers[si]);
            cell.budget = budget;
            cell.noise = cfg.noise[ni].label();
            cell.trial = trial;
            cell.num_samples = static_cast<int>(samples.nodes.size());
            cell.t_final = samples.t_final;
            cell.re = re;
            cell.dcs = dcs;
            cell.times = times;
            cell.times.sample_ms = sample_ms;

            if (!sampler_error.empty()) {
              cell.mse = std::numeric_limits<double>::quiet_NaN();
              cell.status = sampler_error;
              produced.insert({si, bi, ni});
              result.cells.push_back(std::move(cell));
              continue;
            }

            Rng noise_rng = Rng::from_keys({cfg.seed, static_cast<std::uint64_t>(trial),
                                            kTagNoise, si, bi, ni});
            double tr = now_ms();
            try {
              double mse_acc = 0.0;
              for (int row = 0; row < test.num_signals; ++row) {
                std::vector<double> truth(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i)
                  truth[static_cast<std::size_t>(i)] = test.at(row, i);
                std::vector<double> observed;
                observed.reserve(samples.nodes.size());
                for (int node : samples.nodes)
                  observed.push_back(truth[static_cast<std::size_t>(node)]);
                switch (cfg.noise[ni].kind) {
                  case NoiseSpec::Kind::None:
                    break;
                  case NoiseSpec::Kind::Gauss:
                    for (double& y : observed) y += cfg.noise[ni].param * noise_rng.normal();
                    break;
                  case NoiseSpec::Kind::Flip:
                    for (std::size_t k = 0; k < observed.size(); ++k) {
                      if (noise_rng.uniform() >= cfg.noise[ni].param) continue;
                      const auto& alphabet =
                          alphabets[static_cast<std::size_t>(samples.nodes[k])];
                      std::vector<double> others;
                      for (double v : alphabet)
                        if (v != observed[k]) others.push_back(v);
                      if (!others.empty())
                        observed[k] = others[static_cast<std::size_t>(
                            noise_rng.uniform_int(0, static_cast<int>(others.size()) - 1))];
                    }
                    break;
                }
                ReconstructionProblem problem{l_reconstruct, samples.nodes, observed, cfg.mu};
                std::vector<double> estimate_x = reconstruct(problem, cfg.tol);
                mse_acc += mse(truth, estimate_x);
              }
              cell.mse = test.num_signals > 0 ? mse_acc / test.num_signals
                                              : std::numeric_limits<double>::quiet_NaN();
            } catch (const std::exception& e) {
              cell.mse = std::numeric_limits<double>::quiet_NaN();
              cell.status = e.what();
            }
            cell.times.reconstruct_ms = now_ms() - tr;
            produced.insert({si, bi, ni});
            result.cells.push_back(std::move(cell));
          }
        }
      }
    } catch (const std::exception& e) {
      emit_error(e.what());
    }
  }

  // Merge order: (sampler, budget, noise, trial).
  auto key_of = [&](const CellResult& cell) {
    auto sampler_index = [&](const std::string& name) {
      for (std::size_t si = 0; si < cfg.samplers.size(); ++si)
        if (sampler_name(cfg.samplers[si]) == name) return si;
      return cfg.samplers.size();
    };
    auto noise_index = [&](const std::string& label) {
      for (std::size_t ni = 0; ni < cfg.noise.size(); ++ni)
        if (cfg.noise[ni].label() == label) return ni;
      return cfg.noise.size();
    };
    auto budget_index = [&](int budget) {
      for (std::size_t bi = 0; bi < cfg.budgets.size(); ++bi)
        if (cfg.budgets[bi] == budget) return bi;
      return cfg.budgets.size();
    };
    return std::tuple{sampler_index(cell.sampler), budget_index(cell.budget),
                      noise_index(cell.noise), cell.trial};
  };
  std::stable_sort(result.cells.begin(), result.cells.end(),
                   [&](const CellResult& a, const CellResult& b) { return key_of(a) < key_of(b); });
  return result;
}

void write_result_csv(std::ostream& os, const ExperimentResult& result, bool with_timings) {
  os << "sampler,budget,noise,trial,mse,num_samples,t_final,re,dcs,status";
  if (with_timings) os << ",learn_ms,balance_ms,align_ms,sample_ms,reconstruct_ms";
  os << '\n';
  for (const auto& cell : result.cells) {
    os << cell.sampler << ',' << cell.budget << ',' << cell.noise << ',' << cell.trial << ','
       << format_value(cell.mse) << ',' << cell.num_samples << ',' << format_value(cell.t_final)
       << ',' << format_value(cell.re) << ',' << format_value(cell.dcs) << ',' << cell.status;
    if (with_timings)
      os << ',' << format_value(cell.times.learn_ms) << ',' << format_value(cell.times.balance_ms)
         << ',' << format_value(cell.times.align_ms) << ',' << format_value(cell.times.sample_ms)
         << ',' << format_value(cell.times.reconstruct_ms);
    os << '\n';
  }
}

namespace {

nlohmann::json source_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  if (const auto* syn = std::get_if<SyntheticSource>(&cfg.source)) {
    j["type"] = "synthetic";
    j["n"] = syn->n;
    j["avg_degree"] = syn->avg_degree;
    j["weight_lo"] = syn->weight_lo;
    j["weight_hi"] = syn->weight_hi;
    j["neg_fraction"] = syn->neg_fraction;
    j["flip_count"] = syn->flip_count;
    j["signals"] = syn->signals;
  } else {
    const auto& csv = std::get<CsvSource>(cfg.source);
    j["type"] = "csv";
    j["path"] = csv.path;
    j["header"] = csv.header;
  }
  return j;
}

}  // namespace

void write_result_json(std::ostream& os, const ExperimentConfig& cfg,
                       const ExperimentResult& result, bool with_timings) {
  nlohmann::json j;
  j["config"]["source"] = source_to_json(cfg);
  j["config"]["phi"] = cfg.phi;
  j["config"]["mu"] = cfg.mu;
  j["config"]["tol"] = cfg.tol;
  j["config"]["trials"] = cfg.trials;
  j["config"]["split_fraction"] = cfg.split_fraction;
  j["config"]["seed"] = cfg.seed;
  j["config"]["budgets"] = cfg.budgets;
  std::vector<std::string> noise_labels;
  for (const auto& noise : cfg.noise) noise_labels.push_back(noise.label());
  j["config"]["noise"] = noise_labels;
  std::vector<std::string> samplers;
  for (auto s : cfg.samplers) samplers.push_back(sampler_name(s));
  j["config"]["samplers"] = samplers;
  j["config"]["reconstruct_with"] =
      cfg.reconstruct_with == ReconstructWith::Original ? "original" : "balanced";

  std::map<std::string, std::vector<const CellResult*>> groups;
  for (const auto& cell : result.cells)
    groups[cell.sampler + "|" + std::to_string(cell.budget) + "|" + cell.noise].push_back(&cell);

  nlohmann::json summary = nlohmann::json::array();
  for (const auto& [key, cells] : groups) {
    nlohmann::json g;
    g["sampler"] = cells.front()->sampler;
    g["budget"] = cells.front()->budget;
    g["noise"] = cells.front()->noise;
    int ok = 0;
    double mean = 0.0;
    for (const auto* cell : cells)
      if (cell->status == "ok" && std::isfinite(cell->mse)) {
        mean += cell->mse;
        ++ok;
      }
    g["trials"] = cells.size();
    g["ok_trials"] = ok;
    if (ok > 0) {
      mean /= ok;
      double var = 0.0;
      double re = 0.0, dcs = 0.0;
      for (const auto* cell : cells)
        if (cell->status == "ok" && std::isfinite(cell->mse)) {
          var += (cell->mse - mean) * (cell->mse - mean);
          re += cell->re;
          dcs += cell->dcs;
        }
      g["mean_mse"] = mean;
      g["std_mse"] = ok > 1 ? std::sqrt(var / (ok - 1)) : 0.0;
      g["mean_re"] = re / ok;
      g["mean_dcs"] = dcs / ok;
      if (with_timings) {
        double total = 0.0;
        for (const auto* cell : cells)
          if (cell->status == "ok")
            total += cell->times.learn_ms + cell->times.balance_ms + cell->times.align_ms +
                     cell->times.sample_ms + cell->times.reconstruct_ms;
        g["total_ms"] = total;
      }
    }
    summary.push_back(std::move(g));
  }
  j["summary"] = std::move(summary);
  os << j.dump(2) << '\n';
}

ExperimentConfig parse_config_json(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: invalid json: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("source")) {
      const auto& s = j["source"];
      std::string type = s.value("type", "synthetic");
      if (type == "synthetic") {
        SyntheticSource syn;
        syn.n = s.value("n", syn.n);
        syn.avg_degree = s.value("avg_degree", syn.avg_degree);
        syn.weight_lo = s.value("weight_lo", syn.weight_lo);
        syn.weight_hi = s.value("weight_hi", syn.weight_hi);
        syn.neg_fraction = s.value("neg_fraction", syn.neg_fraction);
        syn.flip_count = s.value("flip_count", syn.flip_count);
        syn.signals = s.value("signals", syn.signals);
        cfg.source = syn;
      } else if (type == "csv") {
        CsvSource csv;
        csv.path = s.at("path").get<std::string>();
        csv.header = s.value("header", false);
        cfg.source = csv;
      } else {
        throw std::invalid_argument("config: unknown source type: " + type);
      }
    }
    cfg.phi = j.value("phi", cfg.phi);
    cfg.mu = j.value("mu", cfg.mu);
    cfg.tol = j.value("tol", cfg.tol);
    cfg.glasso_tol = j.value("glasso_tol", cfg.glasso_tol);
    cfg.glasso_max_iter = j.value("glasso_max_iter", cfg.glasso_max_iter);
    if (j.contains("budgets")) cfg.budgets = j["budgets"].get<std::vector<int>>();
    if (j.contains("noise")) {
      cfg.noise.clear();
      for (const auto& item : j["noise"]) cfg.noise.push_back(NoiseSpec::parse(item));
    }
    cfg.trials = j.value("trials", cfg.trials);
    if (j.contains("samplers")) {
      cfg.samplers.clear();
      for (const auto& item : j["samplers"]) {
        std::string name = item.get<std::string>();
        if (name == "proposed")
          cfg.samplers.push_back(SamplerKind::Proposed);
        else if (name == "random")
          cfg.samplers.push_back(SamplerKind::Random);
        else if (name == "degree_greedy")
          cfg.samplers.push_back(SamplerKind::DegreeGreedy);
        else
          throw std::invalid_argument("config: unknown sampler: " + name);
      }
    }
    cfg.split_fraction = j.value("split_fraction", cfg.split_fraction);
    cfg.seed = j.value("seed", cfg.seed);
    std::string rw = j.value("reconstruct_with", std::string("original"));
    if (rw == "original")
      cfg.reconstruct_with = ReconstructWith::Original;
    else if (rw == "balanced")
      cfg.reconstruct_with = ReconstructWith::Balanced;
    else
      throw std::invalid_argument("config: reconstruct_with must be original or balanced");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open: " + path);
  return parse_config_json(is);
}

}  // namespace sgs
