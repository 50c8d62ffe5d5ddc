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

#include "swapq/linops.hpp"

#include <algorithm>
#include <numeric>

namespace swapq {

ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (auto& v : out.data()) v = std::conj(v);
  return out;
}

ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i];
  return out;
}

SubsystemShape::SubsystemShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  for (auto d : dims_) {
    if (d < 1) throw LinalgError("subsystem shape: every local dimension must be >= 1");
    total_ *= d;
  }
}

namespace {

template <class T>
Matrix<T> kron_impl(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

void check_shape(const ComplexMatrix& m, const SubsystemShape& shape, const char* what) {
  if (!m.is_square()) throw LinalgError(std::string(what) + ": matrix is not square");
  if (shape.total() != m.rows())
    throw LinalgError(std::string(what) + ": subsystem shape does not match matrix dimension");
}

std::vector<bool> index_mask(const SubsystemShape& shape, std::span<const std::size_t> idx,
                             const char* what) {
  std::vector<bool> mask(shape.count(), false);
  for (auto i : idx) {
    if (i >= shape.count())
      throw LinalgError(std::string(what) + ": subsystem index out of range");
    mask[i] = true;
  }
  return mask;
}

// Row-major digit strides for the given shape.
std::vector<std::size_t> strides_of(const SubsystemShape& shape) {
  std::vector<std::size_t> s(shape.count(), 1);
  for (std::size_t k = shape.count(); k-- > 1;) s[k - 1] = s[k] * shape.dims()[k];
  return s;
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) { return kron_impl(a, b); }
RealMatrix kron(const RealMatrix& a, const RealMatrix& b) { return kron_impl(a, b); }

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            std::span<const std::size_t> keep) {
  check_shape(m, shape, "partial_trace");
  const auto kept = index_mask(shape, keep, "partial_trace");
  const auto strides = strides_of(shape);
  const std::size_t n = shape.count();

  // Strides of the kept factors inside the reduced space.
  std::vector<std::size_t> out_strides(n, 0);
  std::size_t out_dim = 1;
  for (std::size_t k = n; k-- > 0;) {
    if (kept[k]) {
      out_strides[k] = out_dim;
      out_dim *= shape.dims()[k];
    }
  }

  ComplexMatrix out(out_dim, out_dim);
  const std::size_t dim = m.rows();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      std::size_t oi = 0, oj = 0;
      bool diagonal_in_traced = true;
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t di = (i / strides[k]) % shape.dims()[k];
        const std::size_t dj = (j / strides[k]) % shape.dims()[k];
        if (kept[k]) {
          oi += di * out_strides[k];
          oj += dj * out_strides[k];
        } else if (di != dj) {
          diagonal_in_traced = false;
          break;
        }
      }
      if (diagonal_in_traced) out(oi, oj) += m(i, j);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            std::initializer_list<std::size_t> keep) {
  return partial_trace(m, shape, std::span<const std::size_t>(keep.begin(), keep.size()));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemShape& shape,
                                std::span<const std::size_t> transposed) {
  check_shape(m, shape, "partial_transpose");
  const auto mask = index_mask(shape, transposed, "partial_transpose");
  const auto strides = strides_of(shape);
  const std::size_t dim = m.rows();
  ComplexMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      std::size_t ni = i, nj = j;
      for (std::size_t k = 0; k < shape.count(); ++k) {
        if (!mask[k]) continue;
        const std::size_t di = (i / strides[k]) % shape.dims()[k];
        const std::size_t dj = (j / strides[k]) % shape.dims()[k];
        ni = ni - di * strides[k] + dj * strides[k];
        nj = nj - dj * strides[k] + di * strides[k];
      }
      out(ni, nj) = m(i, j);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemShape& shape,
                                std::initializer_list<std::size_t> transposed) {
  return partial_transpose(m, shape,
                           std::span<const std::size_t>(transposed.begin(), transposed.size()));
}

// ---------------------------------------------------------------------------

namespace {

// Cyclic Jacobi for real symmetric or complex Hermitian matrices. `a` must be
// exactly (anti)symmetric on entry; it is destroyed.
template <class T>
std::vector<double> jacobi(Matrix<T>& a, Matrix<T>* vectors) {
  const std::size_t n = a.rows();
  if (vectors) *vectors = Matrix<T>::identity(n);

  double scale = 0.0;
  for (const auto& v : a.data()) scale += std::norm(v);
  scale = std::sqrt(scale);

  for (int sweep = 0; sweep < 100 && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-15 * scale) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = detail::real_of(a(p, p));
        const double aqq = detail::real_of(a(q, q));
        // Skip rotations that cannot change the diagonal in floating point.
        if (sweep > 3 && mag < 1e-18 * scale) {
          a(p, q) = T{};
          a(q, p) = T{};
          continue;
        }
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const T phase = apq / mag;  // unit modulus; +-1 in the real case
        const T phase_c = detail::conj_of(phase);

        // Columns: A <- A U with U = [[c, s], [-s conj(phase), c conj(phase)]].
        for (std::size_t k = 0; k < n; ++k) {
          const T akp = a(k, p);
          const T akq = a(k, q);
          a(k, p) = c * akp - s * phase_c * akq;
          a(k, q) = s * akp + c * phase_c * akq;
        }
        // Rows: A <- U^dagger A.
        T* rp = a.row_ptr(p);
        T* rq = a.row_ptr(q);
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = rp[k];
          const T aqk = rq[k];
          rp[k] = c * apk - s * phase * aqk;
          rq[k] = s * apk + c * phase * aqk;
        }
        a(p, q) = T{};
        a(q, p) = T{};
        a(p, p) = T{detail::real_of(a(p, p))};
        a(q, q) = T{detail::real_of(a(q, q))};

        if (vectors) {
          auto& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const T vkp = v(k, p);
            const T vkq = v(k, q);
            v(k, p) = c * vkp - s * phase_c * vkq;
            v(k, q) = s * vkp + c * phase_c * vkq;
          }
        }
      }
    }
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = detail::real_of(a(i, i));
  return values;
}

template <class T, class Out>
Out sorted_decomposition(std::vector<double> values, const Matrix<T>& vecs) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
  Out out;
  out.values.resize(n);
  out.vectors = Matrix<T>(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = values[order[k]];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = vecs(r, order[k]);
  }
  return out;
}

ComplexMatrix checked_hermitian(const ComplexMatrix& h, const char* what) {
  if (!h.is_square()) throw LinalgError(std::string(what) + ": matrix is not square");
  if (hermiticity_defect(h) > kHermitianTol)
    throw LinalgError(std::string(what) + ": matrix is not Hermitian");
  return hermitian_part(h);
}

RealMatrix symmetric_copy(const RealMatrix& s) {
  if (!s.is_square()) throw LinalgError("symmetric_eig: matrix is not square");
  RealMatrix a = s;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
  return a;
}

}  // namespace

HermitianEigen hermitian_eig(const ComplexMatrix& h) {
  ComplexMatrix a = checked_hermitian(h, "hermitian_eig");
  ComplexMatrix v;
  auto values = jacobi(a, &v);
  return sorted_decomposition<cplx, HermitianEigen>(std::move(values), v);
}

std::vector<double> hermitian_eigvals(const ComplexMatrix& h) {
  ComplexMatrix a = checked_hermitian(h, "hermitian_eigvals");
  auto values = jacobi<cplx>(a, nullptr);
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

SymmetricEigen symmetric_eig(const RealMatrix& s) {
  RealMatrix a = symmetric_copy(s);
  RealMatrix v;
  auto values = jacobi(a, &v);
  return sorted_decomposition<double, SymmetricEigen>(std::move(values), v);
}

std::vector<double> symmetric_eigvals(const RealMatrix& s) {
  RealMatrix a = symmetric_copy(s);
  auto values = jacobi<double>(a, nullptr);
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double min_eigenvalue(const ComplexMatrix& h) { return hermitian_eigvals(h).back(); }
double max_eigenvalue(const ComplexMatrix& h) { return hermitian_eigvals(h).front(); }

double trace_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (double v : hermitian_eigvals(m)) s += std::abs(v);
  return s;
}

double trace_distance(const ComplexMatrix& r, const ComplexMatrix& s) {
  if (r.rows() != s.rows() || r.cols() != s.cols())
    throw LinalgError("trace_distance: dimension mismatch");
  return 0.5 * trace_norm(r - s);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  const auto eig = hermitian_eig(h);
  const std::size_t n = h.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = std::sqrt(std::max(0.0, eig.values[k]));
    if (r == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = r * eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

}  // namespace swapq
