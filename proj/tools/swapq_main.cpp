// Copyright 2026 The swapq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// swapq <command> [flags]
//
//   xi-grid    optimal p over the xi(x, y) grid next to the closed form
//   sample     random states of the requested ranks with their measures
//   eps-sweep  margin-relaxed optimum for xi(x, 1/4), x in [0.5, 1]
//   swap-prob  optimum for one state read from --state
//   verify     the numbered release checks

#include <iostream>

#include "CLI11.hpp"
#include "swapq/experiments.hpp"

namespace {

using swapq::exp::Command;
using swapq::exp::ExperimentConfig;

void add_common_flags(CLI::App* sub, ExperimentConfig& cfg) {
  sub->add_option("--samples", cfg.samples, "samples per rank")->capture_default_str();
  sub->add_option("--ranks", cfg.ranks, "comma-separated subset of 2,3,4")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--seed", cfg.master_seed, "master seed")->capture_default_str();
  sub->add_option("--tol", cfg.tol, "solver tolerance")->capture_default_str();
  sub->add_option("--eps-list", cfg.eps_list, "comma-separated trace-distance margins")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--grid-step", cfg.grid_step, "grid spacing in (0, 1)")->capture_default_str();
  sub->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
  sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
  sub->add_option("--state", cfg.state_path, "state file for swap-prob");
  sub->add_flag("--wall-time", cfg.record_wall_time,
                "fill wall_time_ms in sample output (makes runs differ)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal probability of swapping a two-qubit state with PPT operations"};
  app.require_subcommand(1);
  ExperimentConfig cfg;
  struct Entry {
    Command command;
    const char* help;
  };
  const Entry entries[] = {
      {Command::XiGrid, "optimal p over the xi(x, y) grid next to the closed form"},
      {Command::Sample, "random states of the requested ranks with their measures"},
      {Command::EpsSweep, "margin-relaxed optimum for xi(x, 1/4), x in [0.5, 1]"},
      {Command::SwapProb, "optimum for one state read from --state"},
      {Command::Verify, "the numbered release checks"},
  };
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(swapq::exp::to_string(e.command), e.help);
    add_common_flags(sub, cfg);
    sub->callback([&cfg, c = e.command] { cfg.command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return swapq::exp::kExitInput;
  }

  switch (cfg.command) {
    case Command::XiGrid: return swapq::exp::cmd_xi_grid(cfg, std::cerr);
    case Command::Sample: return swapq::exp::cmd_sample(cfg, std::cerr);
    case Command::EpsSweep: return swapq::exp::cmd_eps_sweep(cfg, std::cerr);
    case Command::SwapProb: return swapq::exp::cmd_swap_prob(cfg, std::cout, std::cerr);
    case Command::Verify: return swapq::exp::cmd_verify(cfg, std::cout);
  }
  return swapq::exp::kExitInput;
}
