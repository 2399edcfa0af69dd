#include <fstream>
#include <iostream>
#include <memory>

#include <json.hpp>

#include "commands.hpp"
#include "sgs/balance.hpp"
#include "sgs/graph.hpp"

namespace sgs::cli {

namespace {

struct BalanceOptions {
  std::string input;
  std::string output;
  std::string report_path;
  std::string coloring_path;
  int seed_node = 0;
};

nlohmann::json report_to_json(const BalanceReport& report) {
  nlohmann::json j;
  j["iterations"] = report.iterations;
  j["removed_positive"] = nlohmann::json::array();
  for (const auto& e : report.removed_positive)
    j["removed_positive"].push_back({{"i", e.i}, {"j", e.j}, {"w", e.w}});
  j["removed_negative"] = nlohmann::json::array();
  for (const auto& e : report.removed_negative) {
    const char* kind = e.kind == NegativeEdgeCase::Case1
                           ? "case1"
                           : (e.kind == NegativeEdgeCase::Case2 ? "case2" : "same_color");
    j["removed_negative"].push_back({{"i", e.i}, {"j", e.j}, {"w", e.w}, {"case", kind}});
  }
  j["augmented"] = nlohmann::json::array();
  for (const auto& e : report.augmented)
    j["augmented"].push_back({{"i", e.i}, {"j", e.j}, {"old_w", e.old_w}, {"new_w", e.new_w}});
  return j;
}

void run_balance(const BalanceOptions& opt) {
  SignedGraph g = read_edge_list_file(opt.input);
  BalanceResult result = balance_components(g, opt.seed_node);
  write_edge_list_file(opt.output, result.graph);
  if (!opt.report_path.empty()) {
    std::ofstream os(opt.report_path);
    if (!os) throw std::invalid_argument("cannot open for writing: " + opt.report_path);
    os << report_to_json(result.report).dump(2) << '\n';
  }
  if (!opt.coloring_path.empty()) {
    std::ofstream os(opt.coloring_path);
    if (!os) throw std::invalid_argument("cannot open for writing: " + opt.coloring_path);
    for (int beta : result.coloring) os << beta << '\n';
  }
  std::cerr << "balance: " << result.report.removed_positive.size() << " positive removed, "
            << result.report.removed_negative.size() << " negative handled, "
            << result.report.augmented.size() << " augmented\n";
}

}  // namespace

void register_balance(CLI::App& app) {
  auto opt = std::make_shared<BalanceOptions>();
  CLI::App* cmd =
      app.add_subcommand("balance", "Approximate a signed graph with a balanced one");
  cmd->add_option("--input", opt->input, "Signed graph edge list")->required();
  cmd->add_option("--seed", opt->seed_node, "Node that seeds the colored set");
  cmd->add_option("--output", opt->output, "Balanced graph edge list")->required();
  cmd->add_option("--report", opt->report_path, "Write the removal/augmentation audit (JSON)");
  cmd->add_option("--coloring", opt->coloring_path, "Write the node coloring, one +-1 per line");
  cmd->callback([opt] { run_balance(*opt); });
}

}  // namespace sgs::cli
