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

#include "swapq/swap.hpp"

#include <algorithm>

namespace swapq {

namespace {

using sdp::SparseSymmetric;

constexpr double kDrop = 1e-15;

ComplexMatrix basis_element(std::size_t n, std::size_t t) {
  ComplexMatrix e(n, n);
  if (t < n) {
    e(t, t) = 1.0;
    return e;
  }
  std::size_t rest = t - n;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      if (rest < 2) {
        if (rest == 0) {
          e(k, l) = 1.0;
          e(l, k) = 1.0;
        } else {
          e(k, l) = cplx(0.0, 1.0);
          e(l, k) = cplx(0.0, -1.0);
        }
        return e;
      }
      rest -= 2;
    }
  throw LinalgError("basis_element: coordinate index out of range");
}

// Coordinate images of J_t = B E_t B^dag on the three operation blocks.
struct OperationBlocks {
  std::vector<SparseSymmetric> cp;   // embed(E_t), d x d
  std::vector<SparseSymmetric> ppt;  // embed(J_t^{T_A1 T_A2})
  std::vector<SparseSymmetric> tni;  // embed(-tr_{A1B1} J_t)
  std::vector<ComplexMatrix> choi;   // J_t
};

OperationBlocks operation_blocks(const ComplexMatrix& face) {
  const std::size_t d = face.cols();
  const ComplexMatrix face_adj = adjoint(face);
  OperationBlocks b;
  for (std::size_t t = 0; t < d * d; ++t) {
    const ComplexMatrix e = basis_element(d, t);
    ComplexMatrix j = hermitian_part(face * e * face_adj);
    b.cp.push_back(SparseSymmetric::from_dense(sdp::hermitian_embedding(e), kDrop));
    b.ppt.push_back(
        SparseSymmetric::from_dense(sdp::hermitian_embedding(ppt_transpose(j)), kDrop));
    ComplexMatrix marg = input_marginal(j);
    marg *= cplx{-1.0};
    b.tni.push_back(SparseSymmetric::from_dense(sdp::hermitian_embedding(marg), kDrop));
    b.choi.push_back(std::move(j));
  }
  return b;
}

// Adds the K >= 0, PPT and trace non-increasing blocks.
void add_operation_blocks(sdp::SdpProblem& p, const OperationBlocks& ob) {
  const std::size_t d2 = ob.cp.size();
  const std::size_t d = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(d2))));
  const std::size_t first = p.blocks.size();
  p.add_block(2 * d);
  p.add_block(32);
  p.add_block(8).constant = sdp::hermitian_embedding(0.25 * ComplexMatrix::identity(4));
  for (std::size_t t = 0; t < d2; ++t) {
    const std::size_t var = SwapProgram::kChoiOffset + t;
    p.blocks[first].coefficients[var] = ob.cp[t];
    p.blocks[first + 1].coefficients[var] = ob.ppt[t];
    p.blocks[first + 2].coefficients[var] = ob.tni[t];
  }
}

// Columns of the linear map J -> 4 tr_{A2B2}[J (I (x) rho^T)] in Hermitian
// coordinates of the 4x4 output.
std::vector<std::vector<double>> output_map(const OperationBlocks& ob, const DensityMatrix& rho) {
  const ComplexMatrix& r = rho.matrix();
  std::vector<std::vector<double>> cols;
  cols.reserve(ob.choi.size());
  for (const ComplexMatrix& e : ob.choi) {
    ComplexMatrix out(4, 4);
    for (std::size_t o = 0; o < 4; ++o)
      for (std::size_t op = 0; op < 4; ++op) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t ip = 0; ip < 4; ++ip) s += e(4 * o + i, 4 * op + ip) * r(i, ip);
        out(o, op) = 4.0 * s;
      }
    cols.push_back(hermitian_coordinates(out));
  }
  return cols;
}

void check_program_input(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("swap probability: tol must be positive");
}

SwapResult finish(const SwapProgram& prog, const sdp::SdpSolution& sol,
                  const DensityMatrix& rho, double eps) {
  SwapResult r;
  r.raw_probability = sol.x[SwapProgram::kProbabilityVar];
  r.probability = std::clamp(r.raw_probability, 0.0, 1.0);
  r.choi = prog.choi(sol.x);
  r.duality_gap = sol.duality_gap;
  r.status = sol.status;
  r.epsilon = eps;
  r.iterations = sol.iterations;
  r.check = check_ppt_operation(r.choi);
  const ComplexMatrix out = apply_choi(r.choi, rho);
  const ComplexMatrix target = swap_conjugate(rho.matrix());
  if (eps == 0.0) {
    r.target_residual = max_abs_diff(out, r.raw_probability * target);
  } else if (r.raw_probability > 0.0) {
    const double d = trace_distance(hermitian_part(out), r.raw_probability * target);
    r.target_residual = std::max(0.0, d / r.raw_probability - eps);
  }
  return r;
}

}  // namespace

ComplexMatrix hermitian_from_coordinates(std::span<const double> x, std::size_t offset,
                                         std::size_t n) {
  if (x.size() < offset + n * n)
    throw LinalgError("hermitian_from_coordinates: coordinate vector too short");
  ComplexMatrix h(n, n);
  for (std::size_t k = 0; k < n; ++k) h(k, k) = x[offset + k];
  std::size_t t = offset + n;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      const cplx v(x[t], x[t + 1]);
      h(k, l) = v;
      h(l, k) = std::conj(v);
      t += 2;
    }
  return h;
}

std::vector<double> hermitian_coordinates(const ComplexMatrix& h) {
  const std::size_t n = h.rows();
  std::vector<double> c;
  c.reserve(n * n);
  for (std::size_t k = 0; k < n; ++k) c.push_back(h(k, k).real());
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      c.push_back(h(k, l).real());
      c.push_back(h(k, l).imag());
    }
  return c;
}

ComplexMatrix choi_face(const DensityMatrix& rho) {
  const HermitianEigen eig = hermitian_eig(rho.matrix());
  const ComplexMatrix v = swap_operator();
  std::vector<ComplexMatrix> out_supp, out_ker, in_ker;
  for (std::size_t k = 0; k < 4; ++k) {
    ComplexMatrix u(4, 1);
    for (std::size_t i = 0; i < 4; ++i) u(i, 0) = eig.vectors(i, k);
    // Eigenvectors of V rho V are V u; those of conj(rho) are conj(u).
    if (eig.values[k] > kFaceRankTol) {
      out_supp.push_back(v * u);
    } else {
      out_ker.push_back(v * u);
      in_ker.push_back(conjugate(u));
    }
  }
  std::vector<ComplexMatrix> cols;
  for (const auto& o : out_supp)
    for (std::size_t i = 0; i < 4; ++i) {
      ComplexMatrix e(4, 1);
      e(i, 0) = 1.0;
      cols.push_back(kron(o, e));
    }
  for (const auto& o : out_ker)
    for (const auto& w : in_ker) cols.push_back(kron(o, w));
  ComplexMatrix face(16, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < 16; ++r) face(r, c) = cols[c](r, 0);
  return face;
}

ChoiMatrix SwapProgram::choi(std::span<const double> x) const {
  const ComplexMatrix k = hermitian_from_coordinates(x, kChoiOffset, face.cols());
  return ChoiMatrix(hermitian_part(face * k * adjoint(face)));
}

SwapProgram build_exact_swap_program(const DensityMatrix& rho) {
  ComplexMatrix face = choi_face(rho);
  const OperationBlocks ob = operation_blocks(face);
  const std::size_t nk = ob.choi.size();
  const std::size_t nvars = 1 + nk;
  SwapProgram prog{sdp::SdpProblem(nvars), std::move(face)};
  auto& p = prog.problem;
  p.objective[SwapProgram::kProbabilityVar] = 1.0;
  add_operation_blocks(p, ob);

  const auto cols = output_map(ob, rho);
  const auto target = hermitian_coordinates(swap_conjugate(rho.matrix()));
  for (std::size_t r = 0; r < 16; ++r) {
    std::vector<double> row(nvars, 0.0);
    row[SwapProgram::kProbabilityVar] = -target[r];
    for (std::size_t t = 0; t < nk; ++t) row[SwapProgram::kChoiOffset + t] = cols[t][r];
    p.add_equality(row, 0.0);
  }
  return prog;
}

SwapProgram build_approx_swap_program(const DensityMatrix& rho, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("approx swap: eps must lie in [0, 1]");
  // The margin lets the output leave the support of V rho V, so J keeps the
  // full 16-dimensional face.
  ComplexMatrix face = ComplexMatrix::identity(16);
  const OperationBlocks ob = operation_blocks(face);
  const std::size_t nk = ob.choi.size();
  const std::size_t p_off = 1 + nk;
  const std::size_t q_off = p_off + 16;
  const std::size_t nvars = q_off + 16;
  SwapProgram prog{sdp::SdpProblem(nvars), std::move(face)};
  auto& p = prog.problem;
  p.objective[SwapProgram::kProbabilityVar] = 1.0;
  add_operation_blocks(p, ob);

  const std::size_t first = p.blocks.size();
  p.add_block(8);
  p.add_block(8);
  for (std::size_t t = 0; t < 16; ++t) {
    const auto e = SparseSymmetric::from_dense(sdp::hermitian_embedding(basis_element(4, t)), kDrop);
    p.blocks[first].coefficients[p_off + t] = e;
    p.blocks[first + 1].coefficients[q_off + t] = e;
  }
  // 2 eps p - tr P - tr Q >= 0.
  auto& margin = p.add_block(1);
  margin.coefficients[SwapProgram::kProbabilityVar].entries.push_back({0, 0, 2.0 * eps});
  for (std::size_t t = 0; t < 4; ++t) {
    margin.coefficients[p_off + t].entries.push_back({0, 0, -1.0});
    margin.coefficients[q_off + t].entries.push_back({0, 0, -1.0});
  }

  const auto cols = output_map(ob, rho);
  const auto target = hermitian_coordinates(swap_conjugate(rho.matrix()));
  for (std::size_t r = 0; r < 16; ++r) {
    std::vector<double> row(nvars, 0.0);
    row[SwapProgram::kProbabilityVar] = -target[r];
    for (std::size_t t = 0; t < nk; ++t) row[SwapProgram::kChoiOffset + t] = cols[t][r];
    row[p_off + r] = -1.0;
    row[q_off + r] = 1.0;
    p.add_equality(row, 0.0);
  }
  // tr sigma = p; the first four coordinates are the diagonal.
  std::vector<double> row(nvars, 0.0);
  row[SwapProgram::kProbabilityVar] = -1.0;
  for (std::size_t t = 0; t < nk; ++t)
    row[SwapProgram::kChoiOffset + t] = cols[t][0] + cols[t][1] + cols[t][2] + cols[t][3];
  p.add_equality(row, 0.0);
  return prog;
}

SwapResult exact_swap_probability(const DensityMatrix& rho, double tol) {
  check_program_input(tol);
  const SwapProgram prog = build_exact_swap_program(rho);
  const auto sol = sdp::solve(prog.problem, tol, 200);
  return finish(prog, sol, rho, 0.0);
}

SwapResult approx_swap_probability(const DensityMatrix& rho, double eps, double tol) {
  check_program_input(tol);
  if (eps == 0.0) return exact_swap_probability(rho, tol);
  const SwapProgram prog = build_approx_swap_program(rho, eps);
  const auto sol = sdp::solve(prog.problem, tol, 200);
  return finish(prog, sol, rho, eps);
}

double analytic_p_xi(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw std::invalid_argument("analytic_p_xi: x and y must lie in [0, 1]");
  if (x == 0.0 || x == 1.0 || y == 0.0 || y == 1.0) return 1.0;
  return y <= 0.5 ? y / (1.0 - y) : (1.0 - y) / y;
}

double lower_bound_curve(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("lower_bound_curve: c must lie in [0, 1]");
  const double s = std::sqrt(1.0 - c * c);
  return (1.0 - s) / (1.0 + s);
}

double upper_bound_curve(double dp) {
  if (!(dp >= 0.0 && dp < 0.5))
    throw std::invalid_argument("upper_bound_curve: dp must lie in [0, 1/2)");
  return (1.0 - 2.0 * dp) / (1.0 + 2.0 * dp);
}

}  // namespace swapq
