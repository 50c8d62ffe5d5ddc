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

#ifndef SWAPQ_MEASURES_HPP
#define SWAPQ_MEASURES_HPP

#include "swapq/states.hpp"

namespace swapq {

/// Minimum partial-transpose eigenvalue at or above which a state counts as
/// separable (PPT is exact for two qubits).
inline constexpr double kSeparabilityTol = -1e-9;

/// Wootters concurrence, max(0, l1 - l2 - l3 - l4) with l_i the descending
/// square roots of the spectrum of sqrt(rho) R sqrt(rho),
/// R = (sy (x) sy) rho^* (sy (x) sy).
double concurrence(const DensityMatrix& rho);

/// Absolute sum of the negative eigenvalues of rho^{T_A}.
double negativity(const DensityMatrix& rho);

/// tr rho^2.
double purity(const DensityMatrix& rho);

/// |tr rho_A^2 - tr rho_B^2|.
double local_purity_gap(const DensityMatrix& rho);

bool is_separable(const DensityMatrix& rho);

/// Reduced state of the first (A) or second (B) qubit.
ComplexMatrix marginal_a(const DensityMatrix& rho);
ComplexMatrix marginal_b(const DensityMatrix& rho);

struct MeasureVector {
  double concurrence = 0.0;
  double negativity = 0.0;
  double purity = 0.0;
  double local_purity_gap = 0.0;
};

MeasureVector measure_all(const DensityMatrix& rho);

}  // namespace swapq

#endif  // SWAPQ_MEASURES_HPP
