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

#include "swapq/dense.hpp"

#include <algorithm>
#include <numeric>

namespace swapq::dense {

std::optional<RealMatrix> cholesky(const RealMatrix& a) {
  const std::size_t n = a.rows();
  RealMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    const double* lj = l.row_ptr(j);
    for (std::size_t k = 0; k < j; ++k) d -= lj[k] * lj[k];
    if (!(d > 0.0)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      const double* li = l.row_ptr(i);
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
      l(i, j) = s / ljj;
    }
  }
  return l;
}

void forward_substitute(const RealMatrix& lower, std::span<double> b) {
  const std::size_t n = lower.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    const double* li = lower.row_ptr(i);
    for (std::size_t k = 0; k < i; ++k) s -= li[k] * b[k];
    b[i] = s / li[i];
  }
}

void backward_substitute_transposed(const RealMatrix& lower, std::span<double> b) {
  const std::size_t n = lower.rows();
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= lower(k, i) * b[k];
    b[i] = s / lower(i, i);
  }
}

RealMatrix lower_inverse(const RealMatrix& lower) {
  const std::size_t n = lower.rows();
  RealMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / lower(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s -= lower(i, k) * inv(k, j);
      inv(i, j) = s / lower(i, i);
    }
  }
  return inv;
}

std::optional<LuFactor> LuFactor::compute(RealMatrix a) {
  const std::size_t n = a.rows();
  LuFactor f;
  f.pivot_.resize(n);
  double scale = 0.0;
  for (double v : a.data()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return std::nullopt;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        p = i;
      }
    }
    if (best <= 1e-300 || best < 1e-18 * scale) return std::nullopt;
    f.pivot_[k] = p;
    if (p != k) {
      std::swap_ranges(a.row_ptr(k), a.row_ptr(k) + n, a.row_ptr(p));
    }
    const double inv = 1.0 / a(k, k);
    const double* rk = a.row_ptr(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      double* ri = a.row_ptr(i);
      const double m = ri[k] * inv;
      ri[k] = m;
      if (m == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= m * rk[j];
    }
  }
  f.lu_ = std::move(a);
  return f;
}

std::vector<double> LuFactor::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  std::vector<double> x(b.begin(), b.end());
  for (std::size_t k = 0; k < n; ++k)
    if (pivot_[k] != k) std::swap(x[k], x[pivot_[k]]);
  for (std::size_t i = 0; i < n; ++i) {
    const double* ri = lu_.row_ptr(i);
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= ri[k] * x[k];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    const double* ri = lu_.row_ptr(i);
    double s = x[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= ri[k] * x[k];
    x[i] = s / ri[i];
  }
  return x;
}

Svd svd(const RealMatrix& a) {
  // Hestenes one-sided Jacobi: orthogonalize the columns of U = A V.
  const std::size_t n = a.rows();
  RealMatrix u = a;
  RealMatrix v = RealMatrix::identity(n);
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          alpha += u(k, p) * u(k, p);
          beta += u(k, q) * u(k, q);
          gamma += u(k, p) * u(k, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        double t = 1.0 / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        if (zeta < 0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < n; ++k) {
          const double up = u(k, p), uq = u(k, q);
          u(k, p) = c * up - s * uq;
          u(k, q) = s * up + c * uq;
          const double vp = v(k, p), vq = v(k, q);
          v(k, p) = c * vp - s * vq;
          v(k, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += u(k, j) * u(k, j);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });
  Svd out{RealMatrix(n, n), std::vector<double>(n), RealMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.sigma[j] = sigma[src];
    const double inv = sigma[src] > 0.0 ? 1.0 / sigma[src] : 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      out.u(k, j) = u(k, src) * inv;
      out.v(k, j) = v(k, src);
    }
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double frobenius_dot(const RealMatrix& a, const RealMatrix& b) {
  return dot(a.data(), b.data());
}

RealMatrix symmetrize(const RealMatrix& a) {
  RealMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = 0.5 * (a(i, j) + a(j, i));
  return out;
}

}  // namespace swapq::dense
