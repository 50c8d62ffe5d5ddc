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

// Release gate: ten numbered checks with fixed tolerances, shared by
// `swapq verify` and the acceptance test binary.

#ifndef SWAPQ_ACCEPTANCE_HPP
#define SWAPQ_ACCEPTANCE_HPP

#include <functional>
#include <string>
#include <vector>

#include "swapq/experiments.hpp"

namespace swapq::acceptance {

struct Options {
  std::size_t samples = 500;  // per rank, for checks 4 to 6
  std::uint64_t master_seed = exp::kDefaultSeed;
  double tol = kDefaultSwapTol;
  std::size_t jobs = 1;
  /// Checks to run (1..10); empty runs all.
  std::vector<int> only;
  /// Curve used by check 4. Replaceable so that the suite can be shown to
  /// notice a wrong curve.
  std::function<double(double)> lower_curve = lower_bound_curve;
};

struct Outcome {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kNumChecks = 10;

/// Runs the selected checks in order, reporting each through `on_result` as
/// soon as it finishes.
std::vector<Outcome> run(const Options& options,
                         const std::function<void(const Outcome&)>& on_result = {});

/// "[PASS] 4 lower-bound curve (812.3 s): ..." style line.
std::string format(const Outcome& o);

}  // namespace swapq::acceptance

#endif  // SWAPQ_ACCEPTANCE_HPP
