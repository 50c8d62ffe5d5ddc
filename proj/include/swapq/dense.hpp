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

// Real dense factorizations used by the conic solver.

#ifndef SWAPQ_DENSE_HPP
#define SWAPQ_DENSE_HPP

#include <optional>
#include <span>
#include <vector>

#include "swapq/linops.hpp"

namespace swapq::dense {

/// Lower Cholesky factor of a symmetric positive definite matrix, or nullopt
/// if a non-positive pivot is met.
std::optional<RealMatrix> cholesky(const RealMatrix& a);

/// Solves L x = b in place (L lower triangular).
void forward_substitute(const RealMatrix& lower, std::span<double> b);
/// Solves L^T x = b in place.
void backward_substitute_transposed(const RealMatrix& lower, std::span<double> b);

/// Inverse of a lower-triangular matrix.
RealMatrix lower_inverse(const RealMatrix& lower);

/// LU factorization with partial pivoting.
class LuFactor {
 public:
  /// Returns nullopt if the matrix is numerically singular.
  static std::optional<LuFactor> compute(RealMatrix a);
  std::vector<double> solve(std::span<const double> b) const;
  std::size_t dim() const { return lu_.rows(); }

 private:
  RealMatrix lu_;
  std::vector<std::size_t> pivot_;
};

struct Svd {
  RealMatrix u;                 // left singular vectors (columns)
  std::vector<double> sigma;    // non-increasing
  RealMatrix v;                 // right singular vectors (columns)
};

/// One-sided Jacobi SVD of a square matrix.
Svd svd(const RealMatrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// <a, b> = trace(a^T b) for equally shaped matrices.
double frobenius_dot(const RealMatrix& a, const RealMatrix& b);

/// Returns the symmetric matrix (a + a^T)/2.
RealMatrix symmetrize(const RealMatrix& a);

}  // namespace swapq::dense

#endif  // SWAPQ_DENSE_HPP
