#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "commands.hpp"
#include "sgs/gdas.hpp"
#include "sgs/learn.hpp"
#include "sgs/reconstruct.hpp"

namespace sgs::cli {

namespace {

struct ReconstructOptions {
  std::string laplacian_path;
  std::string samples_path;
  std::string nodes_csv;
  std::string values_path;
  std::string output;
  double mu = 0.01;
  double tol = 1e-8;
};

std::vector<double> read_values(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open: " + path);
  std::vector<double> values;
  double v;
  while (is >> v) values.push_back(v);
  return values;
}

std::vector<int> parse_node_list(const std::string& text) {
  std::vector<int> nodes;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    if (field.empty()) continue;
    nodes.push_back(std::stoi(field));
  }
  return nodes;
}

void run_reconstruct(const ReconstructOptions& opt) {
  if (opt.samples_path.empty() == opt.nodes_csv.empty())
    throw std::invalid_argument("reconstruct: give exactly one of --samples or --nodes");
  ReconstructionProblem problem;
  problem.laplacian = read_matrix_market_file(opt.laplacian_path);
  problem.samples = opt.samples_path.empty()
                        ? parse_node_list(opt.nodes_csv)
                        : read_sample_set_file(opt.samples_path).nodes;
  problem.observations = read_values(opt.values_path);
  problem.mu = opt.mu;
  std::vector<double> signal = reconstruct(problem, opt.tol);

  std::ofstream os(opt.output);
  if (!os) throw std::invalid_argument("cannot open for writing: " + opt.output);
  for (double v : signal) os << format_value(v) << '\n';
  std::cerr << "reconstruct: " << problem.samples.size() << " observations -> "
            << signal.size() << " values\n";
}

}  // namespace

void register_reconstruct(CLI::App& app) {
  auto opt = std::make_shared<ReconstructOptions>();
  CLI::App* cmd = app.add_subcommand(
      "reconstruct", "Low-pass reconstruction of a full signal from sampled values");
  cmd->add_option("--laplacian", opt->laplacian_path,
                  "Generalized Laplacian in Matrix Market form")
      ->required();
  cmd->add_option("--samples", opt->samples_path, "Sample set file from the sample command");
  cmd->add_option("--nodes", opt->nodes_csv, "Comma-separated sampled node indices");
  cmd->add_option("--values", opt->values_path, "Observed values, one per line")->required();
  cmd->add_option("--mu", opt->mu, "Fidelity/prior trade-off weight");
  cmd->add_option("--tol", opt->tol, "Relative residual tolerance");
  cmd->add_option("--output", opt->output, "Reconstructed signal, one value per line")
      ->required();
  cmd->callback([opt] { run_reconstruct(*opt); });
}

}  // namespace sgs::cli
