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

// Release gate: one PASS/FAIL line per check, exit 1 if any check fails.

#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "swapq/acceptance.hpp"

int main(int argc, char** argv) {
  swapq::acceptance::Options opt;
  CLI::App app{"swapq acceptance checks"};
  app.add_option("--samples", opt.samples, "samples per rank for checks 4 to 6")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.master_seed, "master seed");
  app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--only", opt.only, "checks to run (1..10)")
      ->delimiter(',')
      ->check(CLI::Range(1, swapq::acceptance::kNumChecks));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : swapq::exp::kExitInput;
  }

  const auto results = swapq::acceptance::run(opt, [](const swapq::acceptance::Outcome& o) {
    std::cout << swapq::acceptance::format(o) << std::endl;
  });
  std::size_t passed = 0;
  double seconds = 0.0;
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    seconds += r.seconds;
  }
  std::cout << passed << '/' << results.size() << " checks passed in " << seconds << " s\n";
  return passed == results.size() ? swapq::exp::kExitOk : swapq::exp::kExitCriterion;
}
