#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sgs/balance.hpp"
#include "sgs/gdas.hpp"
#include "sgs/graph.hpp"
#include "sgs/learn.hpp"

namespace sgs {

struct SyntheticSource {
  int n = 60;
  double avg_degree = 6.0;
  double weight_lo = 0.5;
  double weight_hi = 2.0;
  double neg_fraction = 0.5;   // share of red nodes in the planted coloring
  int flip_count = 0;          // sign flips applied to unbalance; 0 = ceil(0.15 * edges)
  int signals = 0;             // training signals to draw; 0 = 10 * n
};

struct CsvSource {
  std::string path;
  bool header = false;
};

struct NoiseSpec {
  enum class Kind { None, Flip, Gauss };
  Kind kind = Kind::None;
  double param = 0.0;  // flip probability or gaussian sigma

  std::string label() const;
  static NoiseSpec parse(const std::string& text);  // "none", "flip:0.1", "gauss:0.5"
};

enum class SamplerKind { Proposed, Random, DegreeGreedy };
std::string sampler_name(SamplerKind kind);

enum class ReconstructWith { Original, Balanced };

struct ExperimentConfig {
  std::variant<SyntheticSource, CsvSource> source = SyntheticSource{};
  double phi = 0.1;
  double mu = 0.01;
  double tol = 1e-8;           // reconstruction tolerance
  double glasso_tol = 1e-4;
  int glasso_max_iter = 200;
  std::vector<int> budgets = {8};
  std::vector<NoiseSpec> noise = {NoiseSpec{}};
  int trials = 1;
  std::vector<SamplerKind> samplers = {SamplerKind::Proposed, SamplerKind::Random,
                                       SamplerKind::DegreeGreedy};
  double split_fraction = 0.9;
  std::uint64_t seed = 0;
  ReconstructWith reconstruct_with = ReconstructWith::Original;
};

struct StageTimes {
  double learn_ms = 0.0;
  double balance_ms = 0.0;
  double align_ms = 0.0;
  double sample_ms = 0.0;
  double reconstruct_ms = 0.0;
};

struct CellResult {
  std::string sampler;
  int budget = 0;
  std::string noise;
  int trial = 0;
  double mse = 0.0;
  int num_samples = 0;
  double t_final = 0.0;
  double re = 0.0;
  double dcs = 0.0;
  StageTimes times;
  std::string status = "ok";
};

struct ExperimentResult {
  std::vector<CellResult> cells;
};

/// Connected random graph, balanced by construction: nodes are pre-colored
/// (red with probability neg_fraction) and every edge sign is chosen
/// consistent with the coloring. |weights| are uniform in [lo, hi].
SignedGraph generate_balanced_graph(int n, double avg_degree, double weight_lo, double weight_hi,
                                    double neg_fraction, std::uint64_t seed);

/// Flips the sign of flip_count randomly chosen edges and redraws until the
/// result is unbalanced. Throws when the graph has no cycles (trees stay
/// balanced under any signing).
SignedGraph perturb_to_unbalanced(const SignedGraph& g, int flip_count, std::uint64_t seed);

/// Draws zero-mean Gaussian signals with covariance (L + delta I)^{-1} via
/// a dense Cholesky factorization (oracle scale).
SignalMatrix gmrf_sample(const SparseSymMatrix& l, double delta, int count, std::uint64_t seed);

/// Flip noise moves an entry to a uniformly chosen different value of its
/// column alphabet with probability p; Gaussian noise adds N(0, sigma^2).
/// Alphabets default to the distinct values of each column of x.
SignalMatrix add_noise(const SignalMatrix& x, const NoiseSpec& noise, std::uint64_t seed);
SignalMatrix add_noise(const SignalMatrix& x, const NoiseSpec& noise, std::uint64_t seed,
                       const std::vector<std::vector<double>>& alphabets);
std::vector<std::vector<double>> column_alphabets(const SignalMatrix& x);

/// Comma-separated signals, one row per signal. Malformed rows are rejected
/// with their line number.
SignalMatrix ingest_csv(const std::string& path, bool header = false);
SignalMatrix ingest_csv_stream(std::istream& is, bool header = false);
void export_csv(std::ostream& os, const SignalMatrix& x, bool header = false);

SampleSet baseline_random(int n, int budget, std::uint64_t seed);
/// Top-M nodes by weighted absolute degree (self-loops excluded), ties by
/// lower index.
SampleSet baseline_degree_greedy(const SignedGraph& g, int budget);

/// Balances (per component when needed), aligns, and GDAS-samples a signed
/// graph. Disconnected graphs get per-component budgets proportional to
/// component size; the reported threshold is the worst component's.
SampleSet sample_signed_graph(const SignedGraph& g, double mu, int budget, int seed_node = 0);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Long-format CSV, one row per cell. Stage times are emitted only when
/// with_timings is set so default output is byte-stable across runs.
void write_result_csv(std::ostream& os, const ExperimentResult& result, bool with_timings = false);

/// Aggregated JSON summary per (sampler, budget, noise).
void write_result_json(std::ostream& os, const ExperimentConfig& cfg,
                       const ExperimentResult& result, bool with_timings = false);

ExperimentConfig parse_config_json(std::istream& is);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace sgs
