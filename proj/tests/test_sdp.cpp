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

#include <cmath>
#include <sstream>
#include <vector>

#include "swapq/sdp.hpp"
#include "test_util.hpp"

using namespace swapq;
using namespace swapq::sdp;

namespace {

/// maximize p subject to [p] >= 0 and [1 - p] >= 0.
SdpProblem interval_problem() {
  SdpProblem p(1);
  p.objective[0] = 1.0;
  PsdBlock& lo = p.add_block(1);
  lo.coefficients[0] = SparseSymmetric::from_dense(RealMatrix{{1.0}});
  PsdBlock& hi = p.add_block(1);
  hi.constant(0, 0) = 1.0;
  hi.coefficients[0] = SparseSymmetric::from_dense(RealMatrix{{-1.0}});
  return p;
}

/// maximize t subject to [[1, t], [t, 1]] >= 0.
SdpProblem two_by_two_problem() {
  SdpProblem p(1);
  p.objective[0] = 1.0;
  PsdBlock& b = p.add_block(2);
  b.constant = RealMatrix::identity(2);
  b.coefficients[0] = SparseSymmetric::from_dense(RealMatrix{{0.0, 1.0}, {1.0, 0.0}});
  return p;
}

/// maximize t subject to H - t I >= 0.
SdpProblem min_eigenvalue_problem(const RealMatrix& h) {
  SdpProblem p(1);
  p.objective[0] = 1.0;
  PsdBlock& b = p.add_block(h.rows());
  b.constant = h;
  b.coefficients[0] = SparseSymmetric::from_dense(-1.0 * RealMatrix::identity(h.rows()));
  return p;
}

/// maximize <C, X> over X >= 0 with tr X = 1, for a complex Hermitian C,
/// written over the real coordinates of X. The optimum is lambda_max(C).
/// With `embed` the cone constraint is imposed on the real embedding of X.
SdpProblem max_eigenvalue_problem(const ComplexMatrix& c, bool embed) {
  const std::size_t n = c.rows();
  // Coordinates: diagonal reals, then (re, im) of each strict upper entry.
  const std::size_t nv = n + n * (n - 1);
  SdpProblem p(nv);
  std::vector<ComplexMatrix> basis;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix e(n, n);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ComplexMatrix re(n, n), im(n, n);
      re(i, j) = re(j, i) = 1.0;
      im(i, j) = cplx(0.0, 1.0);
      im(j, i) = cplx(0.0, -1.0);
      basis.push_back(re);
      basis.push_back(im);
    }
  for (std::size_t k = 0; k < nv; ++k) p.objective[k] = trace(c * basis[k]).real();
  PsdBlock& b = p.add_block(embed ? 2 * n : n);
  for (std::size_t k = 0; k < nv; ++k) {
    if (embed) {
      b.coefficients[k] = SparseSymmetric::from_dense(hermitian_embedding(basis[k]));
    } else {
      // Real part only; meaningful for real symmetric C where the optimum
      // is attained at a real X.
      RealMatrix r(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = basis[k](i, j).real();
      b.coefficients[k] = SparseSymmetric::from_dense(r);
    }
  }
  std::vector<double> row(nv, 0.0);
  for (std::size_t i = 0; i < n; ++i) row[i] = 1.0;
  p.add_equality(row, 1.0);
  return p;
}

bool accepted(Status s) { return s == Status::Optimal || s == Status::Stalled; }

}  // namespace

TEST_SUITE("hermitian_embedding") {
  TEST_CASE("real symmetric input duplicates on the diagonal") {
    const RealMatrix s{{1.0, 2.0}, {2.0, -3.0}};
    const RealMatrix e = hermitian_embedding(to_complex(s));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(e(i, j) == s(i, j));
        CHECK(e(i + 2, j + 2) == s(i, j));
        CHECK(e(i, j + 2) == 0.0);
        CHECK(e(i + 2, j) == 0.0);
      }
  }

  TEST_CASE("pauli y has doubled spectrum") {
    const ComplexMatrix y{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}};
    const RealMatrix e = hermitian_embedding(y);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(e(i, j) == e(j, i));
    const auto v = symmetric_eigvals(e);
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(1.0));
    CHECK(v[2] == doctest::Approx(-1.0));
    CHECK(v[3] == doctest::Approx(-1.0));
  }

  TEST_CASE("every eigenvalue appears twice") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
      const ComplexMatrix h = swapq::testing::random_hermitian(5, s);
      const auto a = hermitian_eigvals(h);
      const auto b = symmetric_eigvals(hermitian_embedding(h));
      for (std::size_t i = 0; i < 5; ++i) {
        CHECK(b[2 * i] == doctest::Approx(a[i]).epsilon(1e-10));
        CHECK(b[2 * i + 1] == doctest::Approx(a[i]).epsilon(1e-10));
      }
      // PSD input stays PSD.
      CHECK(symmetric_eigvals(hermitian_embedding(swapq::testing::random_psd(5, s))).back() >=
            -1e-14);
    }
  }
}

TEST_SUITE("solve") {
  TEST_CASE("interval endpoint") {
    const SdpSolution s = solve(interval_problem());
    CHECK(s.status == Status::Optimal);
    CHECK(s.objective_value == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(s.duality_gap <= 1e-8);
  }

  TEST_CASE("two by two determinant boundary") {
    const SdpSolution s = solve(two_by_two_problem());
    CHECK(s.status == Status::Optimal);
    CHECK(s.x[0] == doctest::Approx(1.0).epsilon(1e-7));
  }

  TEST_CASE("pauli x minimum eigenvalue") {
    const SdpSolution s = solve(min_eigenvalue_problem(RealMatrix{{0.0, 1.0}, {1.0, 0.0}}));
    CHECK(s.status == Status::Optimal);
    CHECK(s.x[0] == doctest::Approx(-1.0).epsilon(1e-7));
  }

  TEST_CASE("minimum eigenvalue of random symmetric matrices") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const ComplexMatrix h = swapq::testing::random_hermitian(6, seed);
      RealMatrix r(6, 6);
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) r(i, j) = h(i, j).real();
      const SdpSolution s = solve(min_eigenvalue_problem(r));
      CHECK(s.status == Status::Optimal);
      CHECK(s.x[0] == doctest::Approx(symmetric_eigvals(r).back()).epsilon(1e-7));
    }
  }

  TEST_CASE("complete certificate: primal and dual feasible with small gap") {
    const SdpProblem p = two_by_two_problem();
    const SdpSolution s = solve(p);
    REQUIRE(s.status == Status::Optimal);
    // Y >= 0 and <F_i, Y> = c_i for the single variable.
    CHECK(symmetric_eigvals(s.dual_blocks[0]).back() >= -1e-9);
    const double fy = p.blocks[0].coefficients[0].dot(s.dual_blocks[0]);
    CHECK(fy == doctest::Approx(-p.objective[0]).epsilon(1e-6));
    CHECK(s.dual_value == doctest::Approx(s.objective_value).epsilon(1e-7));
  }

  TEST_CASE("equality constraints and the trace simplex") {
    const ComplexMatrix h = swapq::testing::random_hermitian(3, 40);
    RealMatrix r(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r(i, j) = h(i, j).real();
    const SdpSolution s = solve(max_eigenvalue_problem(to_complex(r), false));
    CHECK(accepted(s.status));
    CHECK(s.objective_value == doctest::Approx(symmetric_eigvals(r)[0]).epsilon(1e-6));
  }

  TEST_CASE("doubling: the embedded complex problem reaches the complex optimum") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const ComplexMatrix h = swapq::testing::random_hermitian(3, 50 + seed);
      const SdpSolution s = solve(max_eigenvalue_problem(h, true));
      CHECK(accepted(s.status));
      CHECK(s.objective_value == doctest::Approx(hermitian_eigvals(h)[0]).epsilon(1e-6));
    }
  }

  TEST_CASE("doubling: a real problem solved directly and embedded agree") {
    const ComplexMatrix h = swapq::testing::random_hermitian(4, 60);
    RealMatrix r(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) r(i, j) = h(i, j).real();
    const SdpSolution direct = solve(max_eigenvalue_problem(to_complex(r), false));
    const SdpSolution embedded = solve(max_eigenvalue_problem(to_complex(r), true));
    CHECK(std::abs(direct.objective_value - embedded.objective_value) <= 1e-7);
  }

  TEST_CASE("infeasible problem is reported") {
    // x >= 1 and x <= 0.
    SdpProblem p(1);
    p.objective[0] = 1.0;
    PsdBlock& a = p.add_block(1);
    a.constant(0, 0) = -1.0;
    a.coefficients[0] = SparseSymmetric::from_dense(RealMatrix{{1.0}});
    PsdBlock& b = p.add_block(1);
    b.coefficients[0] = SparseSymmetric::from_dense(RealMatrix{{-1.0}});
    const SdpSolution s = solve(p);
    CHECK_FALSE(accepted(s.status));
  }

  TEST_CASE("invalid problems throw") {
    SdpProblem p(2);
    p.add_block(2).coefficients.resize(1);
    CHECK_THROWS_AS(solve(p), SdpError);
    SdpProblem q = interval_problem();
    q.blocks[0].coefficients[0] = SparseSymmetric::from_dense(RealMatrix{{1.0, 0.0}, {0.0, 1.0}});
    CHECK_THROWS_AS(solve(q), SdpError);
  }
}

TEST_SUITE("feasibility_oracle") {
  TEST_CASE("interval at 0.5 is feasible, at 1.5 infeasible") {
    const SdpProblem p = interval_problem();
    CHECK(feasibility_oracle(p, 0.5).verdict == Feasibility::Feasible);
    CHECK(feasibility_oracle(p, 1.5).verdict == Feasibility::Infeasible);
    CHECK(feasibility_oracle(p, -0.5).verdict == Feasibility::Infeasible);
  }

  TEST_CASE("two by two boundary") {
    const SdpProblem p = two_by_two_problem();
    CHECK(feasibility_oracle(p, 0.99).verdict == Feasibility::Feasible);
    CHECK(feasibility_oracle(p, 1.01).verdict == Feasibility::Infeasible);
  }

  TEST_CASE("feasible verdict comes with a near-feasible point") {
    const SdpProblem p = min_eigenvalue_problem(RealMatrix{{2.0, 1.0}, {1.0, 2.0}});
    const FeasibilityReport r = feasibility_oracle(p, 0.5);
    REQUIRE(r.verdict == Feasibility::Feasible);
    REQUIRE(r.x.size() == 1);
    CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.min_eigenvalue >= -1e-6);
  }

  TEST_CASE("inconsistent equalities are infeasible") {
    SdpProblem p(2);
    p.objective = {1.0, 0.0};
    p.add_block(1).coefficients[1] = SparseSymmetric::from_dense(RealMatrix{{1.0}});
    const std::vector<double> row{1.0, 0.0};
    p.add_equality(row, 0.25);
    CHECK(feasibility_oracle(p, 0.25).verdict == Feasibility::Feasible);
    CHECK(feasibility_oracle(p, 0.5).verdict == Feasibility::Infeasible);
  }

  TEST_CASE("bisection brackets the interior point optimum") {
    const SdpProblem p = min_eigenvalue_problem(RealMatrix{{1.0, 2.0}, {2.0, 1.0}});
    const BisectionResult b = bisect_optimum(p, -3.0, 3.0, 1e-4);
    CHECK(b.conclusive);
    CHECK(b.lower <= -1.0 + 1e-6);
    CHECK(b.upper >= -1.0 - 1e-6);
    CHECK(b.upper - b.lower <= 1e-4);
    CHECK(b.estimate == doctest::Approx(-1.0).epsilon(1e-4));
  }
}

TEST_SUITE("problem io") {
  TEST_CASE("round trip preserves the solution") {
    const SdpProblem p = max_eigenvalue_problem(swapq::testing::random_hermitian(3, 3), true);
    std::stringstream ss;
    write_problem(ss, p);
    const SdpProblem q = read_problem(ss);
    CHECK(q.num_vars == p.num_vars);
    CHECK(q.blocks.size() == p.blocks.size());
    CHECK(q.num_equalities() == p.num_equalities());
    CHECK(solve(q).objective_value == doctest::Approx(solve(p).objective_value).epsilon(1e-12));
  }

  TEST_CASE("garbage is rejected") {
    std::stringstream ss("not a problem");
    CHECK_THROWS(read_problem(ss));
  }
}
