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

#include "swapq/measures.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "swapq/dense.hpp"

namespace swapq {

namespace {

ComplexMatrix sigma_y_sigma_y() {
  // sy (x) sy is real: antidiagonal (-1, 1, 1, -1).
  ComplexMatrix m(4, 4);
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

double purity_of(const ComplexMatrix& m) {
  // tr m^2 = sum |m_ij|^2 for Hermitian m.
  double s = 0.0;
  for (const auto& v : m.data()) s += std::norm(v);
  return s;
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
  // With rho = W W^dagger, W = V sqrt(diag(lambda)), the l_i are the singular
  // values of the complex symmetric tau = W^T (sy (x) sy) W. Taking them from a
  // Jacobi SVD keeps rank-deficient states accurate to round-off; going through
  // the eigenvalues of sqrt(rho) R sqrt(rho) would lose half the digits.
  const HermitianEigen e = hermitian_eig(rho.matrix());
  ComplexMatrix w = e.vectors;
  for (std::size_t k = 0; k < 4; ++k) {
    const double s = std::sqrt(std::max(0.0, e.values[k]));
    for (std::size_t i = 0; i < 4; ++i) w(i, k) *= s;
  }
  const ComplexMatrix tau = transpose(w) * sigma_y_sigma_y() * w;
  // [[Re, -Im], [Im, Re]] carries every singular value of tau twice.
  RealMatrix embed(8, 8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      embed(i, j) = embed(i + 4, j + 4) = tau(i, j).real();
      embed(i + 4, j) = tau(i, j).imag();
      embed(i, j + 4) = -tau(i, j).imag();
    }
  const std::vector<double> sigma = dense::svd(embed).sigma;
  const double l0 = sigma[0], l1 = sigma[2], l2 = sigma[4], l3 = sigma[6];
  return std::clamp(l0 - l1 - l2 - l3, 0.0, 1.0);
}

double negativity(const DensityMatrix& rho) {
  const auto ev = hermitian_eigvals(partial_transpose(rho.matrix(), DensityMatrix::shape(), {0}));
  double s = 0.0;
  for (double v : ev)
    if (v < 0.0) s -= v;
  return s;
}

double purity(const DensityMatrix& rho) { return purity_of(rho.matrix()); }

ComplexMatrix marginal_a(const DensityMatrix& rho) {
  return partial_trace(rho.matrix(), DensityMatrix::shape(), {0});
}

ComplexMatrix marginal_b(const DensityMatrix& rho) {
  return partial_trace(rho.matrix(), DensityMatrix::shape(), {1});
}

double local_purity_gap(const DensityMatrix& rho) {
  return std::abs(purity_of(marginal_a(rho)) - purity_of(marginal_b(rho)));
}

bool is_separable(const DensityMatrix& rho) {
  return min_eigenvalue(partial_transpose(rho.matrix(), DensityMatrix::shape(), {0})) >=
         kSeparabilityTol;
}

MeasureVector measure_all(const DensityMatrix& rho) {
  return {concurrence(rho), negativity(rho), purity(rho), local_purity_gap(rho)};
}

}  // namespace swapq
