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

#ifndef SWAPQ_STATES_HPP
#define SWAPQ_STATES_HPP

#include <array>
#include <cstdint>
#include <string>

#include "swapq/linops.hpp"
#include "swapq/rng.hpp"

namespace swapq {

/// A density-matrix invariant failed; what() names the invariant
/// ("dimension", "finite", "hermiticity", "trace" or "positivity").
class InvariantError : public std::invalid_argument {
 public:
  InvariantError(std::string invariant, const std::string& detail)
      : std::invalid_argument(invariant + ": " + detail), invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

/// Two-qubit state: Hermitian (1e-10), unit trace (1e-10) and PSD (-1e-9).
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPositivityTol = -1e-9;

  /// Validates and stores (m + m^dagger)/2.
  explicit DensityMatrix(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const { return m_; }
  static SubsystemShape shape() { return SubsystemShape{2, 2}; }
  static constexpr std::size_t dim() { return 4; }

 private:
  ComplexMatrix m_;
};

/// x |psi><psi| + (1 - x) |01><01| with |psi> = sqrt(y)|00> + sqrt(1-y)|11>.
DensityMatrix xi_state(double x, double y);

/// xp (|psi><psi| + |01><01|) + (1 - 2 xp) |psi_perp><psi_perp| with
/// |psi_perp> = sqrt(1-y)|00> - sqrt(y)|11>. Accepts 1/3 < xp <= 1/2.
DensityMatrix xi_prime_state(double xp, double y);

/// The xp in (1/3, 1/2] at which xi_prime_state has the given purity
/// 2 xp^2 + (1 - 2 xp)^2; purity must lie in (1/3, 1/2].
double xi_prime_parameter_for_purity(double purity);

/// Normalized projector onto the given amplitudes (basis |00>,|01>,|10>,|11>).
DensityMatrix pure_state(const std::array<cplx, 4>& amplitudes);

/// Haar-distributed d x d unitary: Gram-Schmidt QR of a standard complex
/// Gaussian matrix, which fixes the R diagonal to be positive.
ComplexMatrix haar_unitary(std::size_t d, SplitMix64& rng);

/// `rank` leading entries uniform on the (rank-1)-simplex via normalized
/// exponentials; trailing entries exactly zero.
std::array<double, 4> random_simplex_eigenvalues(int rank, SplitMix64& rng);

struct RandomStateSpec {
  int rank = 4;  // 2, 3 or 4
  std::uint64_t seed = 0;
};

/// U diag(lambda) U^dagger with lambda from random_simplex_eigenvalues and U
/// Haar on d = 4, both drawn from SplitMix64(spec.seed) in that order.
DensityMatrix random_density(const RandomStateSpec& spec);

/// sum_k w_k rho_A^k (x) rho_B^k with `terms` random mixed local states and
/// flat Dirichlet weights; separable by construction.
DensityMatrix random_product_mixture(std::uint64_t seed, int terms = 4);

/// Random pure state from a Haar column; entangled with probability one.
DensityMatrix random_pure_state(std::uint64_t seed);

/// sum_k p_k |Bell_k><Bell_k| with flat Dirichlet weights.
DensityMatrix random_bell_diagonal(std::uint64_t seed);

}  // namespace swapq

#endif  // SWAPQ_STATES_HPP
