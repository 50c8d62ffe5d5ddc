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

#include "swapq/states.hpp"

#include <sstream>

namespace swapq {

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw InvariantError("dimension", "a two-qubit density matrix must be 4x4");
  if (!m.all_finite()) throw InvariantError("finite", "matrix has NaN or infinite entries");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    std::ostringstream os;
    os << "max |m - m^dagger| = " << defect;
    throw InvariantError("hermiticity", os.str());
  }
  m_ = hermitian_part(m);
  const double tr = trace(m_).real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "trace = " << tr << ", expected 1";
    throw InvariantError("trace", os.str());
  }
  const double lmin = min_eigenvalue(m_);
  if (lmin < kPositivityTol) {
    std::ostringstream os;
    os << "minimum eigenvalue = " << lmin;
    throw InvariantError("positivity", os.str());
  }
}

namespace {

ComplexMatrix projector(const std::array<cplx, 4>& v) {
  ComplexMatrix p(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) p(i, j) = v[i] * std::conj(v[j]);
  return p;
}

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

DensityMatrix xi_state(double x, double y) {
  require_unit_interval(x, "xi_state: x");
  require_unit_interval(y, "xi_state: y");
  const std::array<cplx, 4> psi{std::sqrt(y), 0.0, 0.0, std::sqrt(1.0 - y)};
  const std::array<cplx, 4> e01{0.0, 1.0, 0.0, 0.0};
  return DensityMatrix(x * projector(psi) + (1.0 - x) * projector(e01));
}

DensityMatrix xi_prime_state(double xp, double y) {
  if (!(xp > 1.0 / 3.0 && xp <= 0.5))
    throw std::invalid_argument("xi_prime_state: xp must lie in (1/3, 1/2]");
  require_unit_interval(y, "xi_prime_state: y");
  const std::array<cplx, 4> psi{std::sqrt(y), 0.0, 0.0, std::sqrt(1.0 - y)};
  const std::array<cplx, 4> perp{std::sqrt(1.0 - y), 0.0, 0.0, -std::sqrt(y)};
  const std::array<cplx, 4> e01{0.0, 1.0, 0.0, 0.0};
  return DensityMatrix(xp * (projector(psi) + projector(e01)) +
                       (1.0 - 2.0 * xp) * projector(perp));
}

double xi_prime_parameter_for_purity(double purity) {
  if (!(purity > 1.0 / 3.0 && purity <= 0.5))
    throw std::invalid_argument("xi_prime_parameter_for_purity: purity must lie in (1/3, 1/2]");
  // 6 xp^2 - 4 xp + 1 = purity, larger root.
  return (2.0 + std::sqrt(6.0 * purity - 2.0)) / 6.0;
}

DensityMatrix pure_state(const std::array<cplx, 4>& amplitudes) {
  double n2 = 0.0;
  for (const auto& a : amplitudes) n2 += std::norm(a);
  if (!(n2 > 0.0) || !std::isfinite(n2))
    throw std::invalid_argument("pure_state: amplitude vector has zero norm");
  const double inv = 1.0 / std::sqrt(n2);
  std::array<cplx, 4> v = amplitudes;
  for (auto& a : v) a *= inv;
  return DensityMatrix(projector(v));
}

ComplexMatrix haar_unitary(std::size_t d, SplitMix64& rng) {
  if (d < 1) throw std::invalid_argument("haar_unitary: dimension must be >= 1");
  const double s = std::sqrt(0.5);
  ComplexMatrix z(d, d);
  for (auto& v : z.data()) {
    const double re = rng.normal();
    const double im = rng.normal();
    v = cplx(s * re, s * im);
  }
  // Modified Gram-Schmidt on the columns; R then has a positive diagonal.
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += std::conj(z(i, k)) * z(i, j);
      for (std::size_t i = 0; i < d; ++i) z(i, j) -= proj * z(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < d; ++i) nrm += std::norm(z(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < d; ++i) z(i, j) /= nrm;
  }
  return z;
}

std::array<double, 4> random_simplex_eigenvalues(int rank, SplitMix64& rng) {
  if (rank < 2 || rank > 4)
    throw std::invalid_argument("random_simplex_eigenvalues: rank must be 2, 3 or 4");
  std::array<double, 4> lam{0.0, 0.0, 0.0, 0.0};
  double total = 0.0;
  for (int i = 0; i < rank; ++i) {
    lam[i] = rng.exponential();
    total += lam[i];
  }
  for (int i = 0; i < rank; ++i) lam[i] /= total;
  return lam;
}

DensityMatrix random_density(const RandomStateSpec& spec) {
  SplitMix64 rng(spec.seed);
  const auto lam = random_simplex_eigenvalues(spec.rank, rng);
  const ComplexMatrix u = haar_unitary(4, rng);
  ComplexMatrix rho(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    if (lam[k] == 0.0) continue;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) rho(i, j) += lam[k] * u(i, k) * std::conj(u(j, k));
  }
  return DensityMatrix(rho);
}

namespace {

ComplexMatrix random_qubit_state(SplitMix64& rng) {
  // Uniform in the Bloch ball.
  const ComplexMatrix u = haar_unitary(2, rng);
  const double r = std::cbrt(rng.uniform());
  const double p0 = 0.5 * (1.0 + r);
  ComplexMatrix out(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      out(i, j) = p0 * u(i, 0) * std::conj(u(j, 0)) + (1.0 - p0) * u(i, 1) * std::conj(u(j, 1));
  return out;
}

}  // namespace

DensityMatrix random_product_mixture(std::uint64_t seed, int terms) {
  if (terms < 1) throw std::invalid_argument("random_product_mixture: terms must be >= 1");
  SplitMix64 rng(seed);
  std::vector<double> w(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (auto& v : w) total += (v = rng.exponential());
  ComplexMatrix rho(4, 4);
  for (const double wk : w) {
    const ComplexMatrix a = random_qubit_state(rng);
    const ComplexMatrix b = random_qubit_state(rng);
    rho += (wk / total) * kron(a, b);
  }
  return DensityMatrix(rho);
}

DensityMatrix random_pure_state(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const ComplexMatrix u = haar_unitary(4, rng);
  return pure_state({u(0, 0), u(1, 0), u(2, 0), u(3, 0)});
}

DensityMatrix random_bell_diagonal(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double s = std::sqrt(0.5);
  const std::array<std::array<cplx, 4>, 4> bell{{{s, 0, 0, s},
                                                 {s, 0, 0, -s},
                                                 {0, s, s, 0},
                                                 {0, s, -s, 0}}};
  std::array<double, 4> w{};
  double total = 0.0;
  for (auto& v : w) total += (v = rng.exponential());
  ComplexMatrix rho(4, 4);
  for (std::size_t k = 0; k < 4; ++k) rho += (w[k] / total) * projector(bell[k]);
  return DensityMatrix(rho);
}

}  // namespace swapq
