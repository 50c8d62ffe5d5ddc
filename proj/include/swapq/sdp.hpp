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

// Small dense semidefinite programs in linear-matrix-inequality form:
//
//     maximize    c^T x
//     subject to  F0_k + sum_i x_i F_ik  >= 0   (PSD, for every block k)
//                 A x = b
//
// The associated dual is
//
//     minimize    sum_k <F0_k, Y_k> + b^T lambda
//     subject to  sum_k <F_ik, Y_k> - (A^T lambda)_i = -c_i,   Y_k >= 0,
//
// and for feasible pairs the gap equals sum_k <S_k, Y_k> with
// S_k = F0_k + sum_i x_i F_ik.

#ifndef SWAPQ_SDP_HPP
#define SWAPQ_SDP_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swapq/linops.hpp"

namespace swapq::sdp {

/// Symmetric matrix stored by its upper-triangular nonzeros.
struct SparseSymmetric {
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;  // row <= col
    double value;
  };
  std::vector<Entry> entries;

  bool empty() const { return entries.empty(); }
  /// Keeps entries of the upper triangle whose magnitude exceeds `drop`.
  static SparseSymmetric from_dense(const RealMatrix& m, double drop = 0.0);
  RealMatrix to_dense(std::size_t dim) const;
  /// <this, m> = trace(this * m) for a symmetric dense m.
  double dot(const RealMatrix& m) const;
  /// out += scale * this.
  void add_to(RealMatrix& out, double scale) const;
};

/// One PSD constraint F0 + sum_i x_i F_i >= 0.
struct PsdBlock {
  std::size_t dim = 0;
  RealMatrix constant;                        // F0, dim x dim
  std::vector<SparseSymmetric> coefficients;  // F_i, one per variable

  PsdBlock() = default;
  PsdBlock(std::size_t dim, std::size_t num_vars)
      : dim(dim), constant(dim, dim), coefficients(num_vars) {}

  /// F0 + sum_i x_i F_i.
  RealMatrix evaluate(std::span<const double> x) const;
};

class SdpError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SdpProblem {
  std::size_t num_vars = 0;
  std::vector<double> objective;  // c, maximized
  std::vector<PsdBlock> blocks;
  RealMatrix eq_matrix;           // A, num_eq x num_vars (may have zero rows)
  std::vector<double> eq_rhs;     // b

  explicit SdpProblem(std::size_t n = 0)
      : num_vars(n), objective(n, 0.0), eq_matrix(0, n) {}

  std::size_t num_equalities() const { return eq_rhs.size(); }
  PsdBlock& add_block(std::size_t dim);
  void add_equality(std::span<const double> row, double rhs);

  /// Throws SdpError when dimensions are inconsistent or a coefficient matrix
  /// lies outside its block.
  void validate() const;
};

/// Stalled: the reported iterate is primal feasible and its objective stopped
/// moving, but no dual certificate was reached. Programs without a strictly
/// feasible point end here; the objective is then accurate to roughly the
/// last observed change, not to tol.
enum class Status { Optimal, Stalled, MaxIterations, NumericalTrouble, Infeasible };

std::string to_string(Status s);

struct SolverOptions {
  double tol = 1e-8;
  int max_iter = 200;
  double step_damping = 0.98;
  bool verbose = false;
};

struct SdpSolution {
  std::vector<double> x;
  double objective_value = 0.0;  // c^T x
  double dual_value = 0.0;       // sum <F0, Y> + b^T lambda
  /// |dual_value - objective_value| / max(1, |objective_value|).
  double duality_gap = 0.0;
  /// max(||F(x) - S||_F / (1 + ||F0||_F), ||Ax - b|| / (1 + ||b||)).
  double primal_residual = 0.0;
  /// ||sum <F_i, Y> - A^T lambda + c|| / (1 + ||c||).
  double dual_residual = 0.0;
  Status status = Status::NumericalTrouble;
  int iterations = 0;

  std::vector<RealMatrix> dual_blocks;   // Y_k
  std::vector<RealMatrix> slack_blocks;  // S_k
  std::vector<double> eq_multipliers;    // lambda
};

/// Primal-dual interior-point method with Nesterov-Todd scaling and a
/// Mehrotra predictor-corrector step. Deterministic for a given problem.
SdpSolution solve(const SdpProblem& problem, const SolverOptions& options = {});
SdpSolution solve(const SdpProblem& problem, double tol, int max_iter);

/// Real symmetric image [[Re H, -Im H], [Im H, Re H]] of a Hermitian H.
/// Every eigenvalue of H appears twice in the spectrum of the result.
RealMatrix hermitian_embedding(const ComplexMatrix& h);

// ---------------------------------------------------------------------------
// Solver-independent cross-check by alternating projections.

enum class Feasibility { Feasible, Infeasible, Inconclusive };

std::string to_string(Feasibility f);

struct FeasibilityReport {
  Feasibility verdict = Feasibility::Inconclusive;
  int sweeps = 0;
  double distance = 0.0;       // gap between the affine set and the cone
  double min_eigenvalue = 0.0; // of the blocks at the last affine iterate
  std::vector<double> x;       // last affine iterate
};

struct FeasibilityOptions {
  int max_sweeps = 20000;
  double residual = 1e-6;
};

/// Decides whether {x : F(x) >= 0, Ax = b, c^T x = value} is nonempty by
/// alternating projections between the affine set (in the space of x and the
/// block matrices) and the product of PSD cones. Feasible: the affine iterate
/// has every block eigenvalue >= -residual and meets the equalities to within
/// residual (relative to the right-hand side). Infeasible: a normalized Farkas
/// certificate built from the negative part of the blocks has been verified.
FeasibilityReport feasibility_oracle(const SdpProblem& problem, double value,
                                     const FeasibilityOptions& options = {});
FeasibilityReport feasibility_oracle(const SdpProblem& problem, double value, int max_sweeps);

struct BisectionResult {
  double estimate = 0.0;  // midpoint of the final bracket
  double lower = 0.0;     // largest value shown feasible
  double upper = 0.0;     // smallest value shown infeasible (or the given cap)
  int oracle_calls = 0;
  bool conclusive = true;  // false if an Inconclusive verdict stopped the search
};

/// Bisection on the objective value using feasibility_oracle. `lower` must be
/// a feasible objective value; `upper` an upper bound on the optimum.
BisectionResult bisect_optimum(const SdpProblem& problem, double lower, double upper,
                               double width, const FeasibilityOptions& options = {});

// ---------------------------------------------------------------------------
// Debug dump:
//   line 1: num_vars num_blocks num_equalities
//   line 2: block dimensions
//   line 3: objective c
//   per block: "F0" then dim rows; then for i in 0..num_vars-1: "F <i>" + rows
//   "A|b" then num_equalities rows of num_vars entries followed by b.
void write_problem(std::ostream& out, const SdpProblem& problem);
SdpProblem read_problem(std::istream& in);

}  // namespace swapq::sdp

#endif  // SWAPQ_SDP_HPP
