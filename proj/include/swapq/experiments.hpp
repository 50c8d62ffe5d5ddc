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

// Batch experiments behind the command-line tool. Every command is a pure
// function of its ExperimentConfig; output rows are ordered by their index and
// each sample draws from its own derived RNG stream, so the number of worker
// threads never changes the bytes written.

#ifndef SWAPQ_EXPERIMENTS_HPP
#define SWAPQ_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swapq/swap.hpp"

namespace swapq::exp {

enum class Command { XiGrid, Sample, EpsSweep, SwapProb, Verify };

std::string to_string(Command c);
std::optional<Command> parse_command(std::string_view name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitCriterion = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSolver = 3;

inline constexpr std::uint64_t kDefaultSeed = 20260416;

struct ExperimentConfig {
  Command command = Command::Sample;
  std::size_t samples = 500;  // per rank
  std::vector<int> ranks{2, 3, 4};
  std::uint64_t master_seed = kDefaultSeed;
  double tol = kDefaultSwapTol;
  std::vector<double> eps_list{0.001, 0.01, 0.05, 0.1};
  double grid_step = 0.1;
  std::size_t jobs = 1;
  std::string out_path;    // empty or "-" writes to stdout
  std::string state_path;  // swap-prob input
  /// Fills wall_time_ms; the output then differs between runs.
  bool record_wall_time = false;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws ConfigError unless samples >= 1, 0 < grid_step < 1, tol > 0,
/// jobs >= 1, ranks is a nonempty subset of {2, 3, 4} without repeats and
/// every eps lies in [0, 1].
void validate(const ExperimentConfig& cfg);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
/// thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

/// Formats with 12 significant digits, independent of the global locale.
std::string format_number(double v);

/// 0, step, 2 step, ... up to `hi`, always ending exactly at `hi`.
std::vector<double> grid_values(double lo, double hi, double step);

// ---------------------------------------------------------------------------

struct XiGridRow {
  double x = 0.0;
  double y = 0.0;
  double p_sdp = 0.0;
  double p_analytic = 0.0;
  double abs_diff = 0.0;
  sdp::Status status = sdp::Status::NumericalTrouble;
};

std::vector<XiGridRow> run_xi_grid(const ExperimentConfig& cfg);
void write_xi_grid_csv(std::ostream& out, const std::vector<XiGridRow>& rows);

struct SampleRecord {
  std::size_t sample_id = 0;
  int rank = 0;
  std::uint64_t seed = 0;
  double p = 0.0;
  double concurrence = 0.0;
  double negativity = 0.0;
  double purity = 0.0;
  double delta_p = 0.0;
  std::string status;
  double duality_gap = 0.0;
  int iterations = 0;
  std::optional<double> wall_time_ms;  // left empty unless requested
};

/// Seed of sample i of the given rank. Independent of which other ranks are
/// requested.
std::uint64_t sample_seed(std::uint64_t master_seed, int rank, std::size_t index);

/// cfg.samples records per rank in cfg.ranks order; sample_id counts from 0
/// across all ranks. Solver failures are recorded in `status`.
std::vector<SampleRecord> run_samples(const ExperimentConfig& cfg);
void write_samples_csv(std::ostream& out, const std::vector<SampleRecord>& records);

/// Two-column "c p" and "dp p" tables of the bound curves for overlaying.
void write_lower_curve(std::ostream& out, int points = 201);
void write_upper_curve(std::ostream& out, int points = 201);

struct EpsSweepRow {
  double eps = 0.0;
  double x = 0.0;
  double p = 0.0;
  sdp::Status status = sdp::Status::NumericalTrouble;
};

inline constexpr double kEpsSweepY = 0.25;

/// xi(x, 1/4) for x in [0.5, 1] with step grid_step, for every eps.
std::vector<EpsSweepRow> run_eps_sweep(const ExperimentConfig& cfg);
void write_eps_sweep_csv(std::ostream& out, const std::vector<EpsSweepRow>& rows);

// ---------------------------------------------------------------------------
// Commands. Each returns a process exit code; diagnostics go to `log`.

int cmd_xi_grid(const ExperimentConfig& cfg, std::ostream& log);
int cmd_sample(const ExperimentConfig& cfg, std::ostream& log);
int cmd_eps_sweep(const ExperimentConfig& cfg, std::ostream& log);
/// Exit 0 when the solve ends Optimal or Stalled (feasible iterate whose
/// objective stopped moving), 3 otherwise, 2 for unreadable or invalid input.
int cmd_swap_prob(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace swapq::exp

#endif  // SWAPQ_EXPERIMENTS_HPP
