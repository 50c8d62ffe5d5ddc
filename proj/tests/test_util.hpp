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

// Small fixtures shared by the unit tests. Everything here is written out
// entry by entry so it does not lean on the routines under test.

#ifndef SWAPQ_TESTS_TEST_UTIL_HPP
#define SWAPQ_TESTS_TEST_UTIL_HPP

#include <array>
#include <cmath>
#include <cstdint>

#include "swapq/linops.hpp"
#include "swapq/rng.hpp"

namespace swapq::testing {

/// Column vector |i> of dimension d.
inline ComplexMatrix ket(std::size_t d, std::size_t i) {
  ComplexMatrix v(d, 1);
  v(i, 0) = 1.0;
  return v;
}

/// |v><v| for a 4-vector given by its amplitudes.
inline ComplexMatrix projector(const std::array<cplx, 4>& a) {
  ComplexMatrix p(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) p(i, j) = a[i] * std::conj(a[j]);
  return p;
}

/// (|00> + |11>)/sqrt(2) projected.
inline ComplexMatrix bell_phi_plus() {
  const double h = 1.0 / std::sqrt(2.0);
  return projector({h, 0.0, 0.0, h});
}

/// Entry-wise xi(x, y) in the basis |00>,|01>,|10>,|11>.
inline ComplexMatrix xi_matrix(double x, double y) {
  ComplexMatrix m(4, 4);
  m(0, 0) = x * y;
  m(0, 3) = x * std::sqrt(y * (1.0 - y));
  m(3, 0) = m(0, 3);
  m(3, 3) = x * (1.0 - y);
  m(1, 1) = 1.0 - x;
  return m;
}

/// Random Hermitian matrix with Gaussian entries.
inline ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = cplx(rng.normal(), rng.normal());
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

/// G G^dagger / tr for a random square G; PSD with unit trace.
inline ComplexMatrix random_psd(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  ComplexMatrix g(n, n);
  for (auto& v : g.data()) v = cplx(rng.normal(), rng.normal());
  ComplexMatrix p = g * adjoint(g);
  const double t = trace(p).real();
  for (auto& v : p.data()) v /= t;
  return p;
}

}  // namespace swapq::testing

#endif  // SWAPQ_TESTS_TEST_UTIL_HPP
