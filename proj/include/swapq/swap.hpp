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

// Optimal probability of turning rho into V rho V with a trace non-increasing
// PPT operation, exactly or up to a trace-distance margin.

#ifndef SWAPQ_SWAP_HPP
#define SWAPQ_SWAP_HPP

#include "swapq/channels.hpp"
#include "swapq/sdp.hpp"

namespace swapq {

inline constexpr double kDefaultSwapTol = 1e-8;

struct SwapResult {
  double probability = 0.0;      // clamped to [0, 1]
  double raw_probability = 0.0;  // solver value before clamping
  ChoiMatrix choi{ComplexMatrix(16, 16)};
  double duality_gap = 0.0;
  sdp::Status status = sdp::Status::NumericalTrouble;
  double epsilon = 0.0;
  int iterations = 0;
  PptCheck check;
  /// Exact mode: max |L(rho) - p V rho V|. Approximate mode: the amount by
  /// which D(L(rho)/p, V rho V) exceeds epsilon (0 when satisfied).
  double target_residual = 0.0;
};

/// Eigenvalues of rho at or below this count as zero when reducing the face.
inline constexpr double kFaceRankTol = 1e-12;

/// Orthonormal 16 x d basis B of the subspace that any feasible J of the exact
/// program is supported on: the complement of ker(V rho V) (x) supp(conj rho).
/// d = 16 - r (4 - r) for rank r.
ComplexMatrix choi_face(const DensityMatrix& rho);

/// Variable layout shared by both swap programs: x[0] = p, then the d*d real
/// coordinates of K with J = B K B^dag (d diagonal entries, then Re/Im of each
/// upper pair in row-major order); the approximate program appends P and Q
/// (16 each).
struct SwapProgram {
  sdp::SdpProblem problem;
  ComplexMatrix face;  // B
  static constexpr std::size_t kProbabilityVar = 0;
  static constexpr std::size_t kChoiOffset = 1;

  ChoiMatrix choi(std::span<const double> x) const;
};

/// maximize p  s.t.  K >= 0, J^{T_A1 T_A2} >= 0, I/4 - tr_{A1B1} J >= 0,
///                   4 tr_{A2B2}[J (I (x) rho^T)] = p V rho V.
SwapProgram build_exact_swap_program(const DensityMatrix& rho);

/// maximize p = tr sigma, sigma = 4 tr_{A2B2}[J (I (x) rho^T)], subject to the
/// three operation blocks and sigma - p V rho V = P - Q, P, Q >= 0,
/// tr(P + Q) <= 2 eps p.
SwapProgram build_approx_swap_program(const DensityMatrix& rho, double eps);

/// Hermitian matrix sum_t x[offset + t] E_t for the coordinate basis used by
/// SwapProgram (n*n parameters for an n x n matrix).
ComplexMatrix hermitian_from_coordinates(std::span<const double> x, std::size_t offset,
                                         std::size_t n);
/// Inverse of hermitian_from_coordinates.
std::vector<double> hermitian_coordinates(const ComplexMatrix& h);

SwapResult exact_swap_probability(const DensityMatrix& rho, double tol = kDefaultSwapTol);
SwapResult approx_swap_probability(const DensityMatrix& rho, double eps,
                                   double tol = kDefaultSwapTol);

/// Closed-form optimum for the xi family: 1 on the boundary x or y in {0, 1},
/// y/(1-y) for y <= 1/2 and (1-y)/y otherwise.
double analytic_p_xi(double x, double y);

/// (1 - sqrt(1 - c^2)) / (1 + sqrt(1 - c^2)): the xi curve at x -> 1 expressed
/// through the concurrence.
double lower_bound_curve(double c);

/// (1 - 2 dp) / (1 + 2 dp): the xi curve at x = 1/2 expressed through the
/// local purity gap; dp in [0, 1/2).
double upper_bound_curve(double dp);

}  // namespace swapq

#endif  // SWAPQ_SWAP_HPP
