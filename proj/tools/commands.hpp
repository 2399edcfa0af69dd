#pragma once

#include <CLI11.hpp>

namespace sgs::cli {

void register_learn(CLI::App& app);
void register_balance(CLI::App& app);
void register_sample(CLI::App& app);
void register_reconstruct(CLI::App& app);
void register_bench(CLI::App& app);

}  // namespace sgs::cli
