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
#include <vector>

#include "swapq/measures.hpp"
#include "swapq/swap.hpp"
#include "test_util.hpp"

using namespace swapq;

namespace {

bool accepted(sdp::Status s) { return s == sdp::Status::Optimal || s == sdp::Status::Stalled; }

/// (u (x) w) rho (u (x) w)^dagger with Haar-random local unitaries.
DensityMatrix local_rotation(const DensityMatrix& rho, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const ComplexMatrix u = haar_unitary(2, rng);
  const ComplexMatrix w = haar_unitary(2, rng);
  const ComplexMatrix uw = kron(u, w);
  return DensityMatrix(uw * rho.matrix() * adjoint(uw));
}

/// Columns of b are orthonormal.
double isometry_defect(const ComplexMatrix& b) {
  return max_abs_diff(adjoint(b) * b, ComplexMatrix::identity(b.cols()));
}

}  // namespace

TEST_SUITE("closed forms") {
  TEST_CASE("analytic p for the xi family") {
    CHECK(analytic_p_xi(0.3, 0.25) == doctest::Approx(1.0 / 3.0));
    CHECK(analytic_p_xi(0.9, 0.25) == doctest::Approx(1.0 / 3.0));
    CHECK(analytic_p_xi(0.0, 0.25) == 1.0);
    CHECK(analytic_p_xi(1.0, 0.25) == 1.0);
    CHECK(analytic_p_xi(0.5, 0.75) == doctest::Approx(1.0 / 3.0));
    CHECK(analytic_p_xi(0.5, 0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(analytic_p_xi(1.1, 0.5), std::invalid_argument);
  }

  TEST_CASE("lower bound curve anchors") {
    CHECK(lower_bound_curve(0.0) == 0.0);
    CHECK(lower_bound_curve(1.0) == doctest::Approx(1.0));
    CHECK(lower_bound_curve(std::sqrt(3.0) / 2.0) == doctest::Approx(1.0 / 3.0));
    for (int k = 1; k <= 100; ++k)
      CHECK(lower_bound_curve(k / 100.0) > lower_bound_curve((k - 1) / 100.0));
  }

  TEST_CASE("upper bound curve anchors") {
    CHECK(upper_bound_curve(0.0) == 1.0);
    CHECK(upper_bound_curve(0.25) == doctest::Approx(1.0 / 3.0));
    CHECK(upper_bound_curve(0.49) == doctest::Approx(0.02 / 1.98));
    CHECK_THROWS_AS(upper_bound_curve(0.5), std::invalid_argument);
  }

  TEST_CASE("curves match xi(x, 1/4) through its measures") {
    // xi(1/2, y) has delta_p = |2y - 1|/2, and xi(1, y) has C = 2 sqrt(y(1-y)).
    for (double y : {0.05, 0.25, 0.4}) {
      CHECK(upper_bound_curve(local_purity_gap(xi_state(0.5, y))) ==
            doctest::Approx(analytic_p_xi(0.5, y)).epsilon(1e-12));
      CHECK(lower_bound_curve(concurrence(xi_state(1.0, y))) ==
            doctest::Approx(y / (1 - y)).epsilon(1e-9));
    }
  }
}

TEST_SUITE("choi_face") {
  TEST_CASE("dimension 16 - r(4 - r) and orthonormal columns") {
    for (int rank : {2, 3, 4}) {
      const ComplexMatrix b = choi_face(random_density({rank, 3}));
      CHECK(b.rows() == 16);
      CHECK(b.cols() == static_cast<std::size_t>(16 - rank * (4 - rank)));
      CHECK(isometry_defect(b) < 1e-12);
    }
    const ComplexMatrix b = choi_face(xi_state(0.5, 0.25));
    CHECK(b.cols() == 12);
    CHECK(isometry_defect(b) < 1e-12);
  }

  TEST_CASE("contains the choi of the slocc swap channel") {
    // The known feasible point must lie in the face: B B^dagger J B B^dagger = J.
    const std::vector<KrausPair> ops{slocc_swap_kraus(0.25)};
    const ComplexMatrix j = kraus_to_choi(ops).matrix();
    const ComplexMatrix b = choi_face(xi_state(0.5, 0.25));
    const ComplexMatrix proj = b * adjoint(b);
    CHECK(max_abs_diff(proj * j * proj, j) < 1e-12);
  }
}

TEST_SUITE("coordinates") {
  TEST_CASE("hermitian coordinates round trip") {
    const ComplexMatrix h = swapq::testing::random_hermitian(5, 12);
    std::vector<double> x{7.0};
    const auto c = hermitian_coordinates(h);
    CHECK(c.size() == 25);
    x.insert(x.end(), c.begin(), c.end());
    CHECK(max_abs_diff(hermitian_from_coordinates(x, 1, 5), h) < 1e-15);
  }
}

TEST_SUITE("exact_swap_probability") {
  TEST_CASE("xi(1/2, 1/4) gives 1/3 with a valid channel") {
    const DensityMatrix rho = xi_state(0.5, 0.25);
    const SwapResult r = exact_swap_probability(rho);
    CHECK(accepted(r.status));
    CHECK(r.probability == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
    CHECK(r.check.all());
    // The returned Choi realizes p V rho V.
    const ComplexMatrix out = apply_choi(r.choi, rho);
    CHECK(max_abs_diff(out, r.raw_probability * swap_conjugate(rho.matrix())) <= 1e-6);
    CHECK(r.target_residual <= 1e-6);
  }

  TEST_CASE("xi agrees with the closed form off the grid") {
    for (double x : {0.15, 0.55, 0.85})
      for (double y : {0.12, 0.33, 0.7}) {
        const SwapResult r = exact_swap_probability(xi_state(x, y));
        CHECK(accepted(r.status));
        CHECK(std::abs(r.probability - analytic_p_xi(x, y)) <= 1e-5);
      }
  }

  TEST_CASE("boundary x = 1 jumps to one") {
    CHECK(exact_swap_probability(xi_state(1.0, 0.25)).probability >= 1.0 - 1e-5);
    CHECK(exact_swap_probability(xi_state(0.99, 0.25)).probability ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-4));
  }

  TEST_CASE("separable states swap with certainty") {
    for (std::uint64_t s = 1; s <= 4; ++s)
      CHECK(exact_swap_probability(random_product_mixture(s)).probability >= 1.0 - 1e-5);
    CHECK(exact_swap_probability(xi_state(0.0, 0.3)).probability >= 1.0 - 1e-5);
  }

  TEST_CASE("entangled pure states swap with certainty") {
    for (std::uint64_t s = 1; s <= 4; ++s) {
      const DensityMatrix rho = random_pure_state(s);
      REQUIRE(concurrence(rho) > 1e-3);
      CHECK(exact_swap_probability(rho).probability >= 1.0 - 1e-5);
    }
  }

  TEST_CASE("bell diagonal states swap with certainty") {
    for (std::uint64_t s = 1; s <= 4; ++s)
      CHECK(exact_swap_probability(random_bell_diagonal(s)).probability >= 1.0 - 1e-5);
  }

  TEST_CASE("invariant under the swap and under local unitaries") {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const DensityMatrix rho = random_density({3, 200 + s});
      const double p = exact_swap_probability(rho).probability;
      const double p_swapped =
          exact_swap_probability(DensityMatrix(swap_conjugate(rho.matrix()))).probability;
      const double p_rotated = exact_swap_probability(local_rotation(rho, s)).probability;
      CHECK(std::abs(p - p_swapped) <= 1e-5);
      CHECK(std::abs(p - p_rotated) <= 1e-5);
    }
  }

  TEST_CASE("random states respect the bound curves") {
    for (int rank : {2, 3, 4})
      for (std::uint64_t s = 1; s <= 3; ++s) {
        const DensityMatrix rho = random_density({rank, 300 + s});
        const SwapResult r = exact_swap_probability(rho);
        CHECK(accepted(r.status));
        CHECK(r.check.all());
        CHECK(r.probability >= lower_bound_curve(concurrence(rho)) - 1e-4);
        // Separable states swap with certainty whatever their marginals; the
        // upper curve constrains entangled states only.
        if (negativity(rho) > 1e-9)
          CHECK(r.probability <= upper_bound_curve(local_purity_gap(rho)) + 1e-3);
      }
  }

  TEST_CASE("nonpositive tolerance throws") {
    CHECK_THROWS_AS(exact_swap_probability(xi_state(0.5, 0.25), 0.0), std::invalid_argument);
  }
}

TEST_SUITE("approx_swap_probability") {
  TEST_CASE("eps = 0 equals the exact program") {
    for (const DensityMatrix& rho : {xi_state(0.5, 0.25), random_density({3, 7})}) {
      const double exact = exact_swap_probability(rho).probability;
      CHECK(std::abs(approx_swap_probability(rho, 0.0).probability - exact) <= 1e-6);
    }
  }

  TEST_CASE("doing nothing suffices once 1 - x <= eps") {
    for (double eps : {0.01, 0.05, 0.1}) {
      const SwapResult r = approx_swap_probability(xi_state(1.0 - eps, 0.25), eps);
      CHECK(accepted(r.status));
      CHECK(r.probability >= 1.0 - 1e-5);
    }
  }

  TEST_CASE("nondecreasing in eps and approaching 1/3 from above") {
    const DensityMatrix rho = xi_state(0.6, 0.25);
    double prev = exact_swap_probability(rho).probability;
    CHECK(prev == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
    for (double eps : {1e-5, 1e-4, 1e-3, 1e-2, 5e-2, 0.1}) {
      const SwapResult r = approx_swap_probability(rho, eps);
      CHECK(accepted(r.status));
      CHECK(r.probability >= prev - 1e-6);
      CHECK(r.target_residual <= 1e-6);
      prev = r.probability;
    }
  }

  TEST_CASE("eps outside [0, 1] throws") {
    CHECK_THROWS_AS(approx_swap_probability(xi_state(0.5, 0.25), -0.1), std::invalid_argument);
    CHECK_THROWS_AS(approx_swap_probability(xi_state(0.5, 0.25), 1.5), std::invalid_argument);
  }
}
