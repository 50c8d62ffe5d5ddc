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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "swapq/acceptance.hpp"
#include "swapq/experiments.hpp"
#include "swapq/matrix_io.hpp"

using namespace swapq;
using namespace swapq::exp;

namespace {

namespace fs = std::filesystem;

/// Scratch directory removed at scope exit.
class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("swapq_test_" + std::to_string(std::hash<std::string>{}(
                                 std::to_string(reinterpret_cast<std::uintptr_t>(this)))));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path file(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_state(const fs::path& p, const ComplexMatrix& m) {
  std::ofstream out(p);
  write_matrix(out, m);
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

ExperimentConfig small_sample_config() {
  ExperimentConfig cfg;
  cfg.command = Command::Sample;
  cfg.samples = 2;
  cfg.ranks = {2, 3};
  return cfg;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("command names round trip") {
    for (Command c : {Command::XiGrid, Command::Sample, Command::EpsSweep, Command::SwapProb,
                      Command::Verify})
      CHECK(parse_command(to_string(c)) == c);
    CHECK_FALSE(parse_command("swap").has_value());
  }

  TEST_CASE("defaults are valid") { CHECK_NOTHROW(validate(ExperimentConfig{})); }

  TEST_CASE("each invalid field is rejected") {
    auto rejects = [](auto mutate) {
      ExperimentConfig cfg;
      mutate(cfg);
      CHECK_THROWS_AS(validate(cfg), ConfigError);
    };
    rejects([](ExperimentConfig& c) { c.samples = 0; });
    rejects([](ExperimentConfig& c) { c.grid_step = 0.0; });
    rejects([](ExperimentConfig& c) { c.grid_step = 1.0; });
    rejects([](ExperimentConfig& c) { c.tol = 0.0; });
    rejects([](ExperimentConfig& c) { c.jobs = 0; });
    rejects([](ExperimentConfig& c) { c.ranks = {}; });
    rejects([](ExperimentConfig& c) { c.ranks = {1}; });
    rejects([](ExperimentConfig& c) { c.ranks = {2, 2}; });
    rejects([](ExperimentConfig& c) { c.eps_list = {0.1, 1.5}; });
    rejects([](ExperimentConfig& c) { c.eps_list = {-0.01}; });
  }
}

TEST_SUITE("helpers") {
  TEST_CASE("format_number uses 12 significant digits") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-2.5e-7) == "-2.5e-07");
  }

  TEST_CASE("grid values end exactly at hi") {
    const auto g = grid_values(0.0, 1.0, 0.1);
    REQUIRE(g.size() == 11);
    CHECK(g.front() == 0.0);
    CHECK(g[3] == 0.3);
    CHECK(g.back() == 1.0);
    const auto h = grid_values(0.5, 1.0, 0.3);
    REQUIRE(h.size() == 3);
    CHECK(h[1] == 0.8);
    CHECK(h.back() == 1.0);
  }

  TEST_CASE("parallel_for visits every index once and rethrows") {
    std::vector<std::atomic<int>> hits(50);
    parallel_for(hits.size(), 3, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, 2,
                                 [](std::size_t i) {
                                   if (i == 7) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
  }

  TEST_CASE("seeds do not depend on the other requested ranks") {
    CHECK(sample_seed(1, 3, 0) == sample_seed(1, 3, 0));
    CHECK(sample_seed(1, 3, 0) != sample_seed(1, 3, 1));
    CHECK(sample_seed(1, 3, 0) != sample_seed(1, 2, 0));
    CHECK(sample_seed(1, 3, 0) != sample_seed(2, 3, 0));
  }

  TEST_CASE("curve tables") {
    std::ostringstream lo, hi;
    write_lower_curve(lo, 11);
    write_upper_curve(hi, 11);
    CHECK(count_lines(lo.str()) == 12);
    CHECK(count_lines(hi.str()) == 12);
    CHECK(lo.str().find("\n1 1\n") != std::string::npos);
  }
}

TEST_SUITE("xi grid") {
  TEST_CASE("coarse grid matches the closed form") {
    ExperimentConfig cfg;
    cfg.grid_step = 0.5;
    const auto rows = run_xi_grid(cfg);
    REQUIRE(rows.size() == 9);
    for (const auto& r : rows) {
      CHECK(r.abs_diff <= 1e-5);
      CHECK(r.p_analytic == analytic_p_xi(r.x, r.y));
    }
    std::ostringstream csv;
    write_xi_grid_csv(csv, rows);
    CHECK(csv.str().rfind("x,y,p_sdp,p_analytic,abs_diff\n", 0) == 0);
    CHECK(csv.str().find("\n0.5,0.5,") != std::string::npos);
  }
}

TEST_SUITE("samples") {
  TEST_CASE("records carry consistent measures and a fixed layout") {
    const auto recs = run_samples(small_sample_config());
    REQUIRE(recs.size() == 4);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      CHECK(recs[i].sample_id == i);
      CHECK(recs[i].rank == (i < 2 ? 2 : 3));
      CHECK(recs[i].p >= 0.0);
      CHECK(recs[i].p <= 1.0);
      CHECK_FALSE(recs[i].wall_time_ms.has_value());
      CHECK((recs[i].status == "Optimal" || recs[i].status == "Stalled"));
    }
    std::ostringstream csv;
    write_samples_csv(csv, recs);
    CHECK(csv.str().rfind("sample_id,rank,seed,p,concurrence,negativity,purity,delta_p,status,"
                          "duality_gap,iterations,wall_time_ms\n",
                          0) == 0);
    CHECK(count_lines(csv.str()) == 5);
  }

  TEST_CASE("thread count does not change the bytes") {
    ExperimentConfig one = small_sample_config(), two = small_sample_config();
    two.jobs = 2;
    std::ostringstream a, b;
    write_samples_csv(a, run_samples(one));
    write_samples_csv(b, run_samples(two));
    CHECK(a.str() == b.str());
  }

  TEST_CASE("a rank's records do not depend on the other ranks requested") {
    ExperimentConfig only3 = small_sample_config();
    only3.ranks = {3};
    const auto both = run_samples(small_sample_config());
    const auto single = run_samples(only3);
    REQUIRE(single.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(single[i].seed == both[2 + i].seed);
      CHECK(single[i].p == both[2 + i].p);
    }
  }

  TEST_CASE("cmd_sample writes the csv and both curve files") {
    TempDir dir;
    ExperimentConfig cfg = small_sample_config();
    cfg.samples = 1;
    cfg.out_path = dir.file("s.csv").string();
    std::ostringstream log;
    CHECK(cmd_sample(cfg, log) == kExitOk);
    CHECK(count_lines(slurp(dir.file("s.csv"))) == 3);
    CHECK(fs::exists(dir.file("s.csv.lower.dat")));
    CHECK(fs::exists(dir.file("s.csv.upper.dat")));
  }

  TEST_CASE("unwritable output is an input error") {
    ExperimentConfig cfg = small_sample_config();
    cfg.samples = 1;
    cfg.ranks = {2};
    cfg.out_path = "/nonexistent/dir/s.csv";
    std::ostringstream log;
    CHECK(cmd_sample(cfg, log) == kExitInput);
  }
}

TEST_SUITE("eps sweep") {
  TEST_CASE("eps = 0 reproduces the xi values at y = 1/4") {
    ExperimentConfig cfg;
    cfg.eps_list = {0.0, 0.1};
    cfg.grid_step = 0.25;
    const auto rows = run_eps_sweep(cfg);
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
      if (r.eps == 0.0) CHECK(std::abs(r.p - analytic_p_xi(r.x, kEpsSweepY)) <= 1e-5);
      if (1.0 - r.x <= r.eps) CHECK(r.p >= 1.0 - 1e-5);
    }
    std::ostringstream csv;
    write_eps_sweep_csv(csv, rows);
    CHECK(csv.str().rfind("eps,x,p\n", 0) == 0);
  }
}

TEST_SUITE("swap-prob") {
  TEST_CASE("product state swaps with certainty") {
    TempDir dir;
    ComplexMatrix m(4, 4);
    m(1, 1) = 1.0;
    write_state(dir.file("s.txt"), m);
    ExperimentConfig cfg;
    cfg.command = Command::SwapProb;
    cfg.state_path = dir.file("s.txt").string();
    std::ostringstream out, log;
    CHECK(cmd_swap_prob(cfg, out, log) == kExitOk);
    const std::string s = out.str();
    CHECK(std::stod(s.substr(s.find("p = ") + 4)) >= 1.0 - 1e-5);
    CHECK(out.str().find("concurrence = 0\n") != std::string::npos);
  }

  TEST_CASE("xi(1/2, 1/4) gives one third") {
    TempDir dir;
    write_state(dir.file("xi.txt"), xi_state(0.5, 0.25).matrix());
    ExperimentConfig cfg;
    cfg.state_path = dir.file("xi.txt").string();
    std::ostringstream out, log;
    REQUIRE(cmd_swap_prob(cfg, out, log) == kExitOk);
    const std::string s = out.str();
    const double p = std::stod(s.substr(s.find("p = ") + 4));
    CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
  }

  TEST_CASE("trace 0.9 is rejected naming the invariant") {
    TempDir dir;
    ComplexMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = 0.225;
    write_state(dir.file("bad.txt"), m);
    ExperimentConfig cfg;
    cfg.state_path = dir.file("bad.txt").string();
    std::ostringstream out, log;
    CHECK(cmd_swap_prob(cfg, out, log) == kExitInput);
    CHECK(log.str().find("trace") != std::string::npos);
  }

  TEST_CASE("missing state path and unreadable files are input errors") {
    ExperimentConfig cfg;
    std::ostringstream out, log;
    CHECK(cmd_swap_prob(cfg, out, log) == kExitInput);
    cfg.state_path = "/nonexistent/state.txt";
    CHECK(cmd_swap_prob(cfg, out, log) == kExitInput);
  }
}

TEST_SUITE("acceptance") {
  TEST_CASE("check 4 passes with the true curve and notices a raised one") {
    acceptance::Options opt;
    opt.samples = 3;
    opt.only = {4};
    const auto good = acceptance::run(opt);
    REQUIRE(good.size() == 1);
    CHECK(good[0].id == 4);
    CHECK(good[0].passed);
    opt.lower_curve = [](double c) { return std::min(1.0, lower_bound_curve(c) + 0.5); };
    const auto bad = acceptance::run(opt);
    REQUIRE(bad.size() == 1);
    CHECK_FALSE(bad[0].passed);
    CHECK(acceptance::format(bad[0]).rfind("[FAIL] 4 ", 0) == 0);
  }

  TEST_CASE("check 10 passes") {
    acceptance::Options opt;
    opt.only = {10};
    const auto r = acceptance::run(opt);
    REQUIRE(r.size() == 1);
    CHECK(r[0].passed);
  }
}
