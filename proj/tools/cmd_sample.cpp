#include <iostream>
#include <memory>

#include "commands.hpp"
#include "sgs/gdas.hpp"
#include "sgs/harness.hpp"
#include "sgs/learn.hpp"

namespace sgs::cli {

namespace {

struct SampleOptions {
  std::string graph_path;
  std::string laplacian_path;
  std::string output;
  std::string balanced_output;
  double mu = 0.01;
  int budget = 0;
  int seed_node = 0;
};

void run_sample(const SampleOptions& opt) {
  if (opt.graph_path.empty() == opt.laplacian_path.empty())
    throw std::invalid_argument("sample: give exactly one of --graph or --laplacian");
  SignedGraph g = opt.graph_path.empty()
                      ? precision_to_graph(read_matrix_market_file(opt.laplacian_path), 0.0)
                      : read_edge_list_file(opt.graph_path);
  if (!opt.balanced_output.empty()) {
    BalanceResult balanced = balance_components(g, opt.seed_node);
    write_edge_list_file(opt.balanced_output, balanced.graph);
  }
  SampleSet samples = sample_signed_graph(g, opt.mu, opt.budget, opt.seed_node);
  write_sample_set_file(opt.output, samples);
  std::cerr << "sample: " << samples.nodes.size() << " of " << g.size()
            << " nodes, threshold " << samples.t_final << '\n';
}

}  // namespace

void register_sample(CLI::App& app) {
  auto opt = std::make_shared<SampleOptions>();
  CLI::App* cmd = app.add_subcommand(
      "sample", "Select sampling nodes on a signed graph (balance + align + cover)");
  cmd->add_option("--graph", opt->graph_path, "Signed graph edge list");
  cmd->add_option("--laplacian", opt->laplacian_path,
                  "Generalized Laplacian in Matrix Market form");
  cmd->add_option("--mu", opt->mu, "Fidelity/prior trade-off weight");
  cmd->add_option("--budget", opt->budget, "Sampling budget")->required();
  cmd->add_option("--seed", opt->seed_node, "Balancing seed node");
  cmd->add_option("--output", opt->output, "Sample set output path")->required();
  cmd->add_option("--balanced-output", opt->balanced_output,
                  "Also write the balanced graph edge list");
  cmd->callback([opt] { run_sample(*opt); });
}

}  // namespace sgs::cli
