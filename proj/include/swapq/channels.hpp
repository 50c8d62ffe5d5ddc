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

// Channels on two qubits in the Choi picture.
//
// Layout: a Choi matrix acts on A1 (x) B1 (x) A2 (x) B2, where (A1, B1) is the
// output pair and (A2, B2) the input pair, in that fixed order. The
// normalization is J = (L (x) I)|W><W| with |W> = (1/2) sum_i |i>|i>, so
//
//   L(rho)               = 4 tr_{A2B2}[ J (I (x) rho^T) ]
//   trace non-increasing <=> tr_{A1B1} J <= I/4
//   PPT operation        <=> J^{T_A1 T_A2} >= 0.

#ifndef SWAPQ_CHANNELS_HPP
#define SWAPQ_CHANNELS_HPP

#include <span>
#include <vector>

#include "swapq/states.hpp"

namespace swapq {

class ChannelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Subsystem indices in the Choi layout.
inline constexpr std::size_t kA1 = 0, kB1 = 1, kA2 = 2, kB2 = 3;

inline constexpr double kChoiCheckTol = 1e-8;
inline constexpr double kPovmTol = 1e-9;

/// V|ij> = |ji> on two qubits.
ComplexMatrix swap_operator();

/// V rho V.
ComplexMatrix swap_conjugate(const ComplexMatrix& rho);

/// 16x16 Hermitian operator on (A1, B1, A2, B2).
class ChoiMatrix {
 public:
  explicit ChoiMatrix(const ComplexMatrix& j);

  const ComplexMatrix& matrix() const { return j_; }
  static SubsystemShape shape() { return SubsystemShape{2, 2, 2, 2}; }

 private:
  ComplexMatrix j_;
};

/// One product Kraus operator a (x) b.
struct KrausPair {
  ComplexMatrix a;
  ComplexMatrix b;

  ComplexMatrix op() const { return kron(a, b); }
};

/// Builds J from product Kraus operators. Throws ChannelError when
/// sum_i a_i^dag a_i (x) b_i^dag b_i exceeds the identity by more than 1e-9.
ChoiMatrix kraus_to_choi(std::span<const KrausPair> ops);

/// 4 tr_{A2B2}[ J (I (x) rho^T) ].
ComplexMatrix apply_choi(const ChoiMatrix& j, const ComplexMatrix& rho);
ComplexMatrix apply_choi(const ChoiMatrix& j, const DensityMatrix& rho);

/// sum_i K_i rho K_i^dag for K_i = a_i (x) b_i.
ComplexMatrix apply_kraus(std::span<const KrausPair> ops, const ComplexMatrix& rho);

struct PptCheck {
  bool cp_ok = false;   // J >= -1e-8
  bool ppt_ok = false;  // J^{T_A1 T_A2} >= -1e-8
  bool tni_ok = false;  // tr_{A1B1} J - I/4 <= 1e-8
  double min_eig = 0.0;
  double min_pt_eig = 0.0;
  double max_tni_excess = 0.0;

  bool all() const { return cp_ok && ppt_ok && tni_ok; }
};

PptCheck check_ppt_operation(const ChoiMatrix& j, double tol = kChoiCheckTol);

/// J^{T_A1 T_A2}.
ComplexMatrix ppt_transpose(const ComplexMatrix& j);

/// tr_{A1B1} J, the 4x4 input marginal.
ComplexMatrix input_marginal(const ComplexMatrix& j);

/// Relabels A <-> B on both the input and the output side.
ChoiMatrix swap_relabel(const ChoiMatrix& j);

/// a = b = |1><0| + sqrt(y/(1-y)) |0><1|, for 0 < y <= 1/2.
KrausPair slocc_swap_kraus(double y);

}  // namespace swapq

#endif  // SWAPQ_CHANNELS_HPP
