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

#ifndef SWAPQ_LINOPS_HPP
#define SWAPQ_LINOPS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swapq {

using cplx = std::complex<double>;

/// Raised when operands have incompatible shapes or violate a documented
/// precondition (non-Hermitian input, bad subsystem layout, ...).
class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {
inline double conj_of(double v) { return v; }
inline cplx conj_of(const cplx& v) { return std::conj(v); }
inline double real_of(double v) { return v; }
inline double real_of(const cplx& v) { return v.real(); }
inline bool finite_of(double v) { return std::isfinite(v); }
inline bool finite_of(const cplx& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}
}  // namespace detail

/// Dense row-major matrix. Used with `double` for the conic solver and with
/// `std::complex<double>` for quantum operators.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw LinalgError("matrix: entry count does not match rows*cols");
    }
  }
  /// Row-wise literal, e.g. Matrix<double>{{1, 2}, {3, 4}}.
  Matrix(std::initializer_list<std::initializer_list<T>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw LinalgError("matrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }
  static Matrix diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = T{d[i]};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }
  T* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
  const T* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

  bool all_finite() const {
    for (const auto& v : data_)
      if (!detail::finite_of(v)) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(T s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  bool operator==(const Matrix& o) const = default;

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw LinalgError("matrix: dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<cplx>;
using RealMatrix = Matrix<double>;

template <class T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) {
  return a += b;
}
template <class T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) {
  return a -= b;
}
template <class T>
Matrix<T> operator-(Matrix<T> a) {
  return a *= T{-1};
}
template <class T>
Matrix<T> operator*(T s, Matrix<T> a) {
  return a *= s;
}
inline ComplexMatrix operator*(double s, ComplexMatrix a) {
  return a *= cplx{s};
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw LinalgError("matmul: inner dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T* ci = c.row_ptr(i);
    const T* ai = a.row_ptr(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = ai[k];
      if (aik == T{}) continue;
      const T* bk = b.row_ptr(k);
      for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <class T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = detail::conj_of(a(i, j));
  return t;
}

ComplexMatrix conjugate(const ComplexMatrix& a);
ComplexMatrix to_complex(const RealMatrix& a);

template <class T>
T trace(const Matrix<T>& a) {
  if (!a.is_square()) throw LinalgError("trace: matrix is not square");
  T s{};
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

template <class T>
double frobenius_norm(const Matrix<T>& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

/// Largest absolute entry of a - b.
template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw LinalgError("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

/// Largest absolute entry of h - h^dagger; zero for an exactly Hermitian h.
template <class T>
double hermiticity_defect(const Matrix<T>& h) {
  if (!h.is_square()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i; j < h.cols(); ++j)
      m = std::max(m, std::abs(h(i, j) - detail::conj_of(h(j, i))));
  return m;
}

/// (h + h^dagger) / 2.
template <class T>
Matrix<T> hermitian_part(const Matrix<T>& h) {
  Matrix<T> out(h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      out(i, j) = 0.5 * (h(i, j) + detail::conj_of(h(j, i)));
  return out;
}

/// Hermiticity tolerance shared by every routine that requires Hermitian
/// input (absolute max deviation of h - h^dagger).
inline constexpr double kHermitianTol = 1e-10;

// ---------------------------------------------------------------------------
// Tensor-product bookkeeping.

/// Local dimensions of a multipartite space, outermost factor first.
/// Two qubits are {2,2}; the channel space (A1,B1,A2,B2) is {2,2,2,2}.
class SubsystemShape {
 public:
  SubsystemShape() = default;
  explicit SubsystemShape(std::vector<std::size_t> dims);
  SubsystemShape(std::initializer_list<std::size_t> dims)
      : SubsystemShape(std::vector<std::size_t>(dims)) {}

  std::span<const std::size_t> dims() const { return dims_; }
  std::size_t count() const { return dims_.size(); }
  std::size_t total() const { return total_; }

  bool operator==(const SubsystemShape&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);

/// Traces out every subsystem not listed in `keep`; the kept factors stay in
/// their original order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            std::initializer_list<std::size_t> keep);

/// Transposes the row/column indices of the listed subsystems.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemShape& shape,
                                std::span<const std::size_t> transposed);
ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemShape& shape,
                                std::initializer_list<std::size_t> transposed);

// ---------------------------------------------------------------------------
// Spectral routines.

struct HermitianEigen {
  std::vector<double> values;  // non-increasing
  ComplexMatrix vectors;       // columns are eigenvectors
};

struct SymmetricEigen {
  std::vector<double> values;  // non-increasing
  RealMatrix vectors;
};

/// Cyclic Jacobi eigendecomposition. Throws LinalgError when h deviates from
/// Hermitian by more than kHermitianTol; otherwise (h + h^dagger)/2 is used.
HermitianEigen hermitian_eig(const ComplexMatrix& h);
std::vector<double> hermitian_eigvals(const ComplexMatrix& h);

SymmetricEigen symmetric_eig(const RealMatrix& s);
/// Eigenvalues only; s is assumed symmetric (lower triangle ignored).
std::vector<double> symmetric_eigvals(const RealMatrix& s);

double min_eigenvalue(const ComplexMatrix& h);
double max_eigenvalue(const ComplexMatrix& h);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& m);
/// Half the trace norm of r - s.
double trace_distance(const ComplexMatrix& r, const ComplexMatrix& s);

/// Positive square root of a PSD Hermitian matrix; negative round-off
/// eigenvalues are clamped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

}  // namespace swapq

#endif  // SWAPQ_LINOPS_HPP
