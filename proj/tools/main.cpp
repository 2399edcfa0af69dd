#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "commands.hpp"
#include "sgs/solvers.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Signed-graph sampling toolkit: learn a sparse precision graph, balance it, "
               "pick samples by Gershgorin disc alignment, and reconstruct signals."};
  app.require_subcommand(1);

  sgs::cli::register_learn(app);
  sgs::cli::register_balance(app);
  sgs::cli::register_sample(app);
  sgs::cli::register_reconstruct(app);
  sgs::cli::register_bench(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const sgs::ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    if (e.condition_estimate() > 0.0)
      std::cerr << "condition estimate: " << e.condition_estimate() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
