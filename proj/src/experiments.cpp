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

#include "swapq/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "swapq/acceptance.hpp"
#include "swapq/matrix_io.hpp"
#include "swapq/measures.hpp"

namespace swapq::exp {
namespace {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_stdout(const std::string& path) { return path.empty() || path == "-"; }

// The whole payload is produced before the file is opened, so a failed run
// never leaves a truncated file behind.
void emit(const std::string& path, const std::string& payload) {
  if (is_stdout(path)) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open '" + path + "' for writing");
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  out.close();
  if (!out) throw OutputError("failed writing '" + path + "'");
}

template <class Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    log << "error: invalid configuration: " << e.what() << '\n';
  } catch (const OutputError& e) {
    log << "error: " << e.what() << '\n';
  } catch (const MatrixFormatError& e) {
    log << "error: malformed state file: " << e.what() << '\n';
  } catch (const InvariantError& e) {
    log << "error: state violates the density-matrix invariant '" << e.invariant()
        << "': " << e.what() << '\n';
  }
  return kExitInput;
}

bool solver_ok(sdp::Status s) { return s == sdp::Status::Optimal || s == sdp::Status::Stalled; }

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::XiGrid: return "xi-grid";
    case Command::Sample: return "sample";
    case Command::EpsSweep: return "eps-sweep";
    case Command::SwapProb: return "swap-prob";
    case Command::Verify: return "verify";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::XiGrid, Command::Sample, Command::EpsSweep, Command::SwapProb,
                    Command::Verify})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.samples < 1) throw ConfigError("samples must be at least 1");
  if (!(cfg.grid_step > 0.0 && cfg.grid_step < 1.0))
    throw ConfigError("grid_step must lie strictly between 0 and 1");
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) throw ConfigError("tol must be positive");
  if (cfg.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (cfg.ranks.empty()) throw ConfigError("ranks must not be empty");
  for (std::size_t i = 0; i < cfg.ranks.size(); ++i) {
    if (cfg.ranks[i] < 2 || cfg.ranks[i] > 4) throw ConfigError("ranks must be drawn from {2,3,4}");
    for (std::size_t j = 0; j < i; ++j)
      if (cfg.ranks[j] == cfg.ranks[i]) throw ConfigError("ranks must not repeat");
  }
  for (double e : cfg.eps_list)
    if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("every eps must lie in [0, 1]");
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(std::max<std::size_t>(jobs, 1), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !stop; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          stop = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string format_number(double v) {
  if (v == 0.0) return "0";  // also folds -0
  std::array<char, 48> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
  return std::string(buf.data(), ptr);
}

std::vector<double> grid_values(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw ConfigError("grid: need step > 0 and hi >= lo");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 0; k <= count; ++k) {
    // Rounded to 12 decimals so that 0.1 * 3 is written and used as 0.3.
    const double v = std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12;
    out.push_back(std::min(v, hi));
  }
  if (hi - out.back() > 1e-9)
    out.push_back(hi);
  else
    out.back() = hi;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<XiGridRow> run_xi_grid(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto axis = grid_values(0.0, 1.0, cfg.grid_step);
  std::vector<XiGridRow> rows(axis.size() * axis.size());
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    XiGridRow& r = rows[i];
    r.x = axis[i / axis.size()];
    r.y = axis[i % axis.size()];
    const auto res = exact_swap_probability(xi_state(r.x, r.y), cfg.tol);
    r.p_sdp = res.probability;
    r.p_analytic = analytic_p_xi(r.x, r.y);
    r.abs_diff = std::abs(r.p_sdp - r.p_analytic);
    r.status = res.status;
  });
  return rows;
}

void write_xi_grid_csv(std::ostream& out, const std::vector<XiGridRow>& rows) {
  out << "x,y,p_sdp,p_analytic,abs_diff\n";
  for (const auto& r : rows)
    out << format_number(r.x) << ',' << format_number(r.y) << ',' << format_number(r.p_sdp) << ','
        << format_number(r.p_analytic) << ',' << format_number(r.abs_diff) << '\n';
}

std::uint64_t sample_seed(std::uint64_t master_seed, int rank, std::size_t index) {
  return derive_stream_seed(master_seed,
                            (static_cast<std::uint64_t>(rank) << 32) | static_cast<std::uint64_t>(index));
}

std::vector<SampleRecord> run_samples(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<SampleRecord> records(cfg.samples * cfg.ranks.size());
  parallel_for(records.size(), cfg.jobs, [&](std::size_t id) {
    SampleRecord& r = records[id];
    r.sample_id = id;
    r.rank = cfg.ranks[id / cfg.samples];
    r.seed = sample_seed(cfg.master_seed, r.rank, id % cfg.samples);
    const DensityMatrix rho = random_density({r.rank, r.seed});
    const MeasureVector m = measure_all(rho);
    r.concurrence = m.concurrence;
    r.negativity = m.negativity;
    r.purity = m.purity;
    r.delta_p = m.local_purity_gap;
    const auto start = std::chrono::steady_clock::now();
    try {
      const SwapResult res = exact_swap_probability(rho, cfg.tol);
      r.p = res.probability;
      r.status = sdp::to_string(res.status);
      r.duality_gap = res.duality_gap;
      r.iterations = res.iterations;
    } catch (const std::exception&) {
      r.p = 0.0;
      r.status = sdp::to_string(sdp::Status::NumericalTrouble);
    }
    if (cfg.record_wall_time)
      r.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  });
  return records;
}

void write_samples_csv(std::ostream& out, const std::vector<SampleRecord>& records) {
  out << "sample_id,rank,seed,p,concurrence,negativity,purity,delta_p,status,duality_gap,"
         "iterations,wall_time_ms\n";
  for (const auto& r : records) {
    out << r.sample_id << ',' << r.rank << ',' << r.seed << ',' << format_number(r.p) << ','
        << format_number(r.concurrence) << ',' << format_number(r.negativity) << ','
        << format_number(r.purity) << ',' << format_number(r.delta_p) << ',' << r.status << ','
        << format_number(r.duality_gap) << ',' << r.iterations << ',';
    if (r.wall_time_ms) out << format_number(*r.wall_time_ms);
    out << '\n';
  }
}

void write_lower_curve(std::ostream& out, int points) {
  out << "# c lower_bound_curve(c)\n";
  for (int i = 0; i < points; ++i) {
    const double c = static_cast<double>(i) / (points - 1);
    out << format_number(c) << ' ' << format_number(lower_bound_curve(c)) << '\n';
  }
}

void write_upper_curve(std::ostream& out, int points) {
  out << "# dp upper_bound_curve(dp)\n";
  for (int i = 0; i < points; ++i) {
    // Stops one step short of dp = 1/2, where the curve vanishes.
    const double dp = 0.5 * static_cast<double>(i) / points;
    out << format_number(dp) << ' ' << format_number(upper_bound_curve(dp)) << '\n';
  }
}

std::vector<EpsSweepRow> run_eps_sweep(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.eps_list.empty()) throw ConfigError("eps_list must not be empty");
  const auto xs = grid_values(0.5, 1.0, cfg.grid_step);
  std::vector<EpsSweepRow> rows(cfg.eps_list.size() * xs.size());
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    EpsSweepRow& r = rows[i];
    r.eps = cfg.eps_list[i / xs.size()];
    r.x = xs[i % xs.size()];
    const auto res = approx_swap_probability(xi_state(r.x, kEpsSweepY), r.eps, cfg.tol);
    r.p = res.probability;
    r.status = res.status;
  });
  return rows;
}

void write_eps_sweep_csv(std::ostream& out, const std::vector<EpsSweepRow>& rows) {
  out << "eps,x,p\n";
  for (const auto& r : rows)
    out << format_number(r.eps) << ',' << format_number(r.x) << ',' << format_number(r.p) << '\n';
}

// ---------------------------------------------------------------------------

int cmd_xi_grid(const ExperimentConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const auto rows = run_xi_grid(cfg);
    std::ostringstream csv;
    write_xi_grid_csv(csv, rows);
    emit(cfg.out_path, csv.str());
    double worst = 0.0;
    std::size_t trouble = 0;
    for (const auto& r : rows) {
      worst = std::max(worst, r.abs_diff);
      if (!solver_ok(r.status)) ++trouble;
    }
    log << rows.size() << " grid points, max |p_sdp - p_analytic| = " << format_number(worst)
        << '\n';
    if (trouble) {
      log << trouble << " solves ended without a usable iterate\n";
      return kExitSolver;
    }
    return kExitOk;
  });
}

int cmd_sample(const ExperimentConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const auto records = run_samples(cfg);
    std::ostringstream csv;
    write_samples_csv(csv, records);
    emit(cfg.out_path, csv.str());
    if (!is_stdout(cfg.out_path)) {
      std::ostringstream lower, upper;
      write_lower_curve(lower);
      write_upper_curve(upper);
      emit(cfg.out_path + ".lower.dat", lower.str());
      emit(cfg.out_path + ".upper.dat", upper.str());
    }
    std::size_t trouble = 0;
    for (const auto& r : records)
      if (r.status != "Optimal" && r.status != "Stalled") ++trouble;
    log << records.size() << " samples written";
    if (trouble) log << ", " << trouble << " with solver trouble (see status column)";
    log << '\n';
    return kExitOk;
  });
}

int cmd_eps_sweep(const ExperimentConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const auto rows = run_eps_sweep(cfg);
    std::ostringstream csv;
    write_eps_sweep_csv(csv, rows);
    emit(cfg.out_path, csv.str());
    std::size_t trouble = 0;
    for (const auto& r : rows)
      if (!solver_ok(r.status)) ++trouble;
    log << rows.size() << " sweep points written\n";
    if (trouble) {
      log << trouble << " solves ended without a usable iterate\n";
      return kExitSolver;
    }
    return kExitOk;
  });
}

int cmd_swap_prob(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    validate(cfg);
    if (cfg.state_path.empty()) throw ConfigError("swap-prob needs --state");
    const DensityMatrix rho(read_matrix_file(cfg.state_path));
    const MeasureVector m = measure_all(rho);
    const SwapResult res = exact_swap_probability(rho, cfg.tol);
    out << "p = " << format_number(res.probability) << '\n'
        << "concurrence = " << format_number(m.concurrence) << '\n'
        << "negativity = " << format_number(m.negativity) << '\n'
        << "purity = " << format_number(m.purity) << '\n'
        << "delta_p = " << format_number(m.local_purity_gap) << '\n'
        << "status = " << sdp::to_string(res.status) << '\n'
        << "duality_gap = " << format_number(res.duality_gap) << '\n'
        << "iterations = " << res.iterations << '\n';
    if (!solver_ok(res.status)) {
      log << "solver did not reach a usable optimum\n";
      return kExitSolver;
    }
    return kExitOk;
  });
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out) {
  return guarded(out, [&] {
    validate(cfg);
    acceptance::Options opt;
    opt.samples = cfg.samples;
    opt.master_seed = cfg.master_seed;
    opt.tol = cfg.tol;
    opt.jobs = cfg.jobs;
    const auto results = acceptance::run(opt, [&](const acceptance::Outcome& o) {
      out << acceptance::format(o) << std::endl;
    });
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.passed ? 1 : 0;
    out << passed << '/' << results.size() << " checks passed\n";
    return passed == results.size() ? kExitOk : kExitCriterion;
  });
}

}  // namespace swapq::exp
