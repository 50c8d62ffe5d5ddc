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

#include "swapq/channels.hpp"

namespace swapq {

ComplexMatrix swap_operator() {
  ComplexMatrix v(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) v(2 * j + i, 2 * i + j) = 1.0;
  return v;
}

ComplexMatrix swap_conjugate(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw LinalgError("swap_conjugate: expected a 4x4 operator");
  // Index permutation 1 <-> 2.
  static constexpr std::size_t perm[4] = {0, 2, 1, 3};
  ComplexMatrix out(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out(perm[i], perm[j]) = rho(i, j);
  return out;
}

ChoiMatrix::ChoiMatrix(const ComplexMatrix& j) {
  if (j.rows() != 16 || j.cols() != 16) throw ChannelError("choi: expected a 16x16 matrix");
  if (!j.all_finite()) throw ChannelError("choi: matrix has non-finite entries");
  if (hermiticity_defect(j) > kHermitianTol) throw ChannelError("choi: matrix is not Hermitian");
  j_ = hermitian_part(j);
}

ComplexMatrix apply_kraus(std::span<const KrausPair> ops, const ComplexMatrix& rho) {
  ComplexMatrix out(4, 4);
  for (const auto& k : ops) {
    const ComplexMatrix op = k.op();
    out += op * rho * adjoint(op);
  }
  return out;
}

ChoiMatrix kraus_to_choi(std::span<const KrausPair> ops) {
  if (ops.empty()) throw ChannelError("kraus_to_choi: empty Kraus list");
  ComplexMatrix povm(4, 4);
  for (const auto& k : ops) {
    if (k.a.rows() != 2 || k.a.cols() != 2 || k.b.rows() != 2 || k.b.cols() != 2)
      throw ChannelError("kraus_to_choi: Kraus factors must be 2x2");
    const ComplexMatrix op = k.op();
    povm += adjoint(op) * op;
  }
  if (max_eigenvalue(hermitian_part(povm)) > 1.0 + kPovmTol)
    throw ChannelError("kraus_to_choi: sum of K^dag K exceeds the identity (POVM violation)");

  // J = sum_K |v_K><v_K| with v_K[4 o + i] = K[o, i] / 2.
  ComplexMatrix j(16, 16);
  for (const auto& k : ops) {
    const ComplexMatrix op = k.op();
    std::array<cplx, 16> v{};
    for (std::size_t o = 0; o < 4; ++o)
      for (std::size_t i = 0; i < 4; ++i) v[4 * o + i] = 0.5 * op(o, i);
    for (std::size_t r = 0; r < 16; ++r)
      for (std::size_t c = 0; c < 16; ++c) j(r, c) += v[r] * std::conj(v[c]);
  }
  return ChoiMatrix(j);
}

ComplexMatrix apply_choi(const ChoiMatrix& choi, const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw LinalgError("apply_choi: input must be a 4x4 operator");
  const ComplexMatrix& j = choi.matrix();
  ComplexMatrix out(4, 4);
  for (std::size_t o = 0; o < 4; ++o)
    for (std::size_t op = 0; op < 4; ++op) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t ip = 0; ip < 4; ++ip) s += j(4 * o + i, 4 * op + ip) * rho(i, ip);
      out(o, op) = 4.0 * s;
    }
  return out;
}

ComplexMatrix apply_choi(const ChoiMatrix& j, const DensityMatrix& rho) {
  return apply_choi(j, rho.matrix());
}

ComplexMatrix ppt_transpose(const ComplexMatrix& j) {
  return partial_transpose(j, ChoiMatrix::shape(), {kA1, kA2});
}

ComplexMatrix input_marginal(const ComplexMatrix& j) {
  return partial_trace(j, ChoiMatrix::shape(), {kA2, kB2});
}

PptCheck check_ppt_operation(const ChoiMatrix& choi, double tol) {
  const ComplexMatrix& j = choi.matrix();
  PptCheck c;
  c.min_eig = min_eigenvalue(j);
  c.min_pt_eig = min_eigenvalue(hermitian_part(ppt_transpose(j)));
  c.max_tni_excess =
      max_eigenvalue(hermitian_part(input_marginal(j) - 0.25 * ComplexMatrix::identity(4)));
  c.cp_ok = c.min_eig >= -tol;
  c.ppt_ok = c.min_pt_eig >= -tol;
  c.tni_ok = c.max_tni_excess <= tol;
  return c;
}

ChoiMatrix swap_relabel(const ChoiMatrix& choi) {
  // Exchange A1 <-> B1 and A2 <-> B2: index bits (a1 b1 a2 b2) -> (b1 a1 b2 a2).
  auto perm = [](std::size_t idx) {
    const std::size_t a1 = (idx >> 3) & 1, b1 = (idx >> 2) & 1, a2 = (idx >> 1) & 1, b2 = idx & 1;
    return (b1 << 3) | (a1 << 2) | (b2 << 1) | a2;
  };
  const ComplexMatrix& j = choi.matrix();
  ComplexMatrix out(16, 16);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c) out(perm(r), perm(c)) = j(r, c);
  return ChoiMatrix(out);
}

KrausPair slocc_swap_kraus(double y) {
  if (!(y > 0.0 && y <= 0.5)) throw ChannelError("slocc_swap_kraus: y must lie in (0, 1/2]");
  ComplexMatrix a(2, 2);
  a(1, 0) = 1.0;
  a(0, 1) = std::sqrt(y / (1.0 - y));
  return {a, a};
}

}  // namespace swapq
