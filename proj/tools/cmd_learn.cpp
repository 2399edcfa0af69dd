#include <iostream>
#include <memory>

#include "commands.hpp"
#include "sgs/harness.hpp"
#include "sgs/learn.hpp"
#include "sgs/sparse.hpp"

namespace sgs::cli {

namespace {

struct LearnOptions {
  std::string input;
  std::string output;
  std::string graph_output;
  std::string covariance_output;
  bool header = false;
  double phi = 0.1;
  double tol = 1e-4;
  int max_iter = 200;
  double ridge = -1.0;  // negative: pick automatically when the covariance is singular
};

void run_learn(const LearnOptions& opt) {
  SignalMatrix signals = ingest_csv(opt.input, opt.header);
  double ridge = opt.ridge;
  if (ridge < 0.0) {
    SparseSymMatrix plain = empirical_covariance(signals, 0.0);
    double trace = 0.0;
    double min_diag = plain.size() ? plain.at(0, 0) : 0.0;
    for (int i = 0; i < plain.size(); ++i) {
      trace += plain.at(i, i);
      min_diag = std::min(min_diag, plain.at(i, i));
    }
    bool singular = signals.num_signals < signals.num_nodes || min_diag <= 0.0;
    ridge = singular ? 1e-6 * trace / std::max(1, plain.size()) : 0.0;
  }
  SparseSymMatrix covariance = empirical_covariance(signals, ridge);
  if (!opt.covariance_output.empty())
    write_matrix_market_file(opt.covariance_output, covariance);
  PrecisionEstimate estimate = glasso(covariance, opt.phi, opt.tol, opt.max_iter);
  write_matrix_market_file(opt.output, estimate.precision);
  if (!opt.graph_output.empty())
    write_edge_list_file(opt.graph_output, precision_to_graph(estimate.precision));
  std::cerr << "glasso: " << estimate.iterations << " sweeps, "
            << (estimate.converged ? "converged" : "iteration cap reached")
            << ", nnz(P) = " << estimate.precision.nnz() << '\n';
}

}  // namespace

void register_learn(CLI::App& app) {
  auto opt = std::make_shared<LearnOptions>();
  CLI::App* cmd = app.add_subcommand(
      "learn", "Estimate a sparse precision matrix from a CSV of signals");
  cmd->add_option("--input", opt->input, "CSV file, one signal per row")->required();
  cmd->add_flag("--header", opt->header, "First CSV row holds node labels");
  cmd->add_option("--phi", opt->phi, "l1 shrinkage weight");
  cmd->add_option("--tol", opt->tol, "BCD convergence tolerance");
  cmd->add_option("--max-iter", opt->max_iter, "Maximum BCD sweeps");
  cmd->add_option("--ridge", opt->ridge,
                  "Diagonal ridge added to the covariance (default: automatic)");
  cmd->add_option("--output", opt->output, "Precision matrix output (Matrix Market)")
      ->required();
  cmd->add_option("--graph-output", opt->graph_output,
                  "Also write the signed graph as an edge list");
  cmd->add_option("--covariance-output", opt->covariance_output,
                  "Also write the empirical covariance (Matrix Market)");
  cmd->callback([opt] { run_learn(*opt); });
}

}  // namespace sgs::cli
