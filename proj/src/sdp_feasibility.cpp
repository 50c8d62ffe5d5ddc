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

// Projection splitting in the product space of x and the block matrices.
// Block matrices are handled through svec (upper triangle, off-diagonal
// entries scaled by sqrt 2) so that the Euclidean norm is the Frobenius norm.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "swapq/dense.hpp"
#include "swapq/sdp.hpp"

namespace swapq::sdp {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr int kCheckEvery = 10;
constexpr int kStallWindow = 400;
constexpr int kMixMemory = 8;
// Largest accepted mixed step relative to the plain residual.
constexpr double kMaxMixRatio = 100.0;

struct Layout {
  std::vector<std::size_t> offset;  // svec offset of each block
  std::size_t size = 0;
};

Layout make_layout(const SdpProblem& p) {
  Layout l;
  for (const auto& b : p.blocks) {
    l.offset.push_back(l.size);
    l.size += b.dim * (b.dim + 1) / 2;
  }
  return l;
}

std::size_t svec_index(std::size_t dim, std::size_t r, std::size_t c) {
  // Row-major upper triangle.
  return r * dim - r * (r - 1) / 2 + (c - r);
}

void pack(const RealMatrix& m, std::span<double> out) {
  const std::size_t n = m.rows();
  std::size_t t = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) out[t++] = r == c ? m(r, c) : kSqrt2 * m(r, c);
}

RealMatrix unpack(std::span<const double> v, std::size_t n) {
  RealMatrix m(n, n);
  std::size_t t = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      const double value = r == c ? v[t] : v[t] / kSqrt2;
      m(r, c) = value;
      m(c, r) = value;
      ++t;
    }
  return m;
}

// H with m = [[Re H, -Im H], [Im H, Re H]].
ComplexMatrix complex_part(const RealMatrix& m) {
  const std::size_t n = m.rows() / 2;
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = cplx(0.5 * (m(i, j) + m(n + i, n + j)), 0.5 * (m(n + i, j) - m(i, n + j)));
  return h;
}

/// True when m has the block pattern of a Hermitian embedding.
bool is_embedding(const RealMatrix& m) {
  if (m.rows() % 2 != 0) return false;
  const std::size_t n = m.rows() / 2;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) != m(n + i, n + j) || m(n + i, j) != -m(i, n + j)) return false;
  return true;
}

/// Sum over positive eigenvalues of lambda v v^dagger.
template <typename T>
Matrix<T> clip(const std::vector<double>& values, const Matrix<T>& vectors) {
  const std::size_t n = vectors.rows();
  Matrix<T> out(n, n);
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (values[t] <= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const T vi = values[t] * vectors(i, t);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * detail::conj_of(vectors(j, t));
    }
  }
  return out;
}

class Projector {
 public:
  Projector(const SdpProblem& p, double value)
      : p_(p), value_(value), layout_(make_layout(p)) {
    const std::size_t n = p.num_vars;
    const std::size_t m = layout_.size;
    g_ = RealMatrix(m, n);
    columns_.resize(n);
    f0_.assign(m, 0.0);
    for (std::size_t k = 0; k < p.blocks.size(); ++k) {
      const auto& b = p.blocks[k];
      pack(b.constant, std::span<double>(f0_).subspan(layout_.offset[k]));
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& e : b.coefficients[i].entries) {
          const double w = e.row == e.col ? 1.0 : kSqrt2;
          const std::size_t r = layout_.offset[k] + svec_index(b.dim, e.row, e.col);
          g_(r, i) += w * e.value;
          columns_[i].push_back({r, w * e.value});
        }
      bool embedded = is_embedding(b.constant);
      for (std::size_t i = 0; i < n && embedded; ++i)
        embedded = b.coefficients[i].empty() || is_embedding(b.coefficients[i].to_dense(b.dim));
      complex_.push_back(embedded);
    }

    // Rows of [A; c^T] orthonormalized by modified Gram-Schmidt; dependent
    // rows are dropped after checking that their right-hand side agrees.
    const std::size_t total = p.num_equalities() + 1;
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < total; ++r) {
      const bool last = r + 1 == total;
      std::vector<double> row = last ? p.objective
                                     : std::vector<double>(p.eq_matrix.row_ptr(r),
                                                           p.eq_matrix.row_ptr(r) + n);
      double rhs = last ? value : p.eq_rhs[r];
      const double scale = dense::norm2(row);
      for (std::size_t t = 0; t < rows.size(); ++t) {
        const double proj = dense::dot(rows[t], row);
        for (std::size_t i = 0; i < n; ++i) row[i] -= proj * rows[t][i];
        rhs -= proj * rhs_[t];
      }
      const double norm = dense::norm2(row);
      if (norm <= 1e-10 * std::max(1.0, scale)) {
        if (std::abs(rhs) > 1e-9 * std::max(1.0, scale)) inconsistent_ = true;
        continue;
      }
      for (double& v : row) v /= norm;
      rows.push_back(std::move(row));
      rhs_.push_back(rhs / norm);
    }
    const std::size_t q = rows.size();
    e_ = RealMatrix(q, n);
    for (std::size_t r = 0; r < q; ++r) std::copy(rows[r].begin(), rows[r].end(), e_.row_ptr(r));

    // H = I + G^T G.
    RealMatrix h = RealMatrix::identity(n);
    for (std::size_t r = 0; r < m; ++r) {
      const double* gr = g_.row_ptr(r);
      for (std::size_t i = 0; i < n; ++i) {
        if (gr[i] == 0.0) continue;
        double* hi = h.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) hi[j] += gr[i] * gr[j];
      }
    }
    auto l = dense::cholesky(h);
    if (!l) throw SdpError("feasibility_oracle: normal matrix is not positive definite");
    h_factor_ = std::move(*l);

    // W = H^{-1} E^T and the Schur complement S = E W. The affine projection
    // is x = P (x0 + G^T (s0 - f0)) + W S^{-1} rhs with P = H^{-1} - W S^{-1} W^T.
    RealMatrix w(n, q);
    for (std::size_t r = 0; r < q; ++r) {
      std::vector<double> col(e_.row_ptr(r), e_.row_ptr(r) + n);
      h_solve(col);
      for (std::size_t i = 0; i < n; ++i) w(i, r) = col[i];
    }
    auto schur = dense::cholesky(e_ * w);
    if (!schur) throw SdpError("feasibility_oracle: singular equality system");
    // V = W L^{-T}, so that W S^{-1} W^T = V V^T.
    const RealMatrix linv = dense::lower_inverse(*schur);
    const RealMatrix v = w * transpose(linv);
    std::vector<double> t = rhs_;
    dense::forward_substitute(*schur, t);
    dense::backward_substitute_transposed(*schur, t);
    shift_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) shift_[i] = dense::dot({w.row_ptr(i), q}, t);
    projector_ = RealMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> col(n, 0.0);
      col[j] = 1.0;
      h_solve(col);
      for (std::size_t i = 0; i < n; ++i)
        projector_(i, j) = col[i] - dense::dot({v.row_ptr(i), q}, {v.row_ptr(j), q});
    }
  }

  /// True when the equalities together with c^T x = value have no solution.
  bool inconsistent() const { return inconsistent_; }

  std::size_t svec_size() const { return layout_.size; }
  std::size_t num_vars() const { return p_.num_vars; }

  /// Nearest point (x, s) with s = f0 + G x, E x = rhs to (x0, s0).
  void affine(std::span<const double> x0, std::span<const double> s0, std::vector<double>& x,
              std::vector<double>& s) const {
    const std::size_t n = p_.num_vars;
    const std::size_t m = layout_.size;
    std::vector<double> diff(m);
    for (std::size_t r = 0; r < m; ++r) diff[r] = s0[r] - f0_[r];
    std::vector<double> y(x0.begin(), x0.end());
    add_gt(diff, y);
    x = shift_;
    for (std::size_t i = 0; i < n; ++i) x[i] += dense::dot({projector_.row_ptr(i), n}, y);
    // P carries round-off proportional to |y|, which grows without bound on
    // infeasible instances; restore E x = rhs exactly (rows are orthonormal).
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t r = 0; r < rhs_.size(); ++r) {
        const double d = dense::dot({e_.row_ptr(r), n}, x) - rhs_[r];
        for (std::size_t i = 0; i < n; ++i) x[i] -= d * e_(r, i);
      }
    s = f0_;
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] != 0.0)
        for (const auto& [r, v] : columns_[i]) s[r] += v * x[i];
  }

  /// Projects s onto the product of PSD cones in place; returns the
  /// smallest eigenvalue seen before clipping.
  double cone(std::vector<double>& s) const {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < p_.blocks.size(); ++k) {
      const std::size_t dim = p_.blocks[k].dim;
      auto slot = std::span<double>(s).subspan(layout_.offset[k], dim * (dim + 1) / 2);
      const RealMatrix m = unpack(slot, dim);
      if (complex_[k]) {
        const auto eig = hermitian_eig(complex_part(m));
        lowest = std::min(lowest, eig.values.back());
        if (eig.values.back() >= 0.0) continue;
        pack(hermitian_embedding(clip(eig.values, eig.vectors)), slot);
      } else {
        const auto eig = symmetric_eig(m);
        lowest = std::min(lowest, eig.values.back());
        if (eig.values.back() >= 0.0) continue;
        pack(clip(eig.values, eig.vectors), slot);
      }
    }
    return lowest;
  }

  /// max(|A x - b|_inf / (1 + |b|_inf), |c^T x - value| / (1 + |value|)) on
  /// the rows as given.
  double equality_residual(std::span<const double> x) const {
    const std::size_t n = p_.num_vars;
    double b_max = 0.0, worst = 0.0;
    for (double b : p_.eq_rhs) b_max = std::max(b_max, std::abs(b));
    for (std::size_t r = 0; r < p_.num_equalities(); ++r) {
      const double d = dense::dot({p_.eq_matrix.row_ptr(r), n}, x) - p_.eq_rhs[r];
      worst = std::max(worst, std::abs(d) / (1.0 + b_max));
    }
    const double d = dense::dot(p_.objective, x) - value_;
    return std::max(worst, std::abs(d) / (1.0 + std::abs(value_)));
  }

  /// Smallest eigenvalue over all blocks of s.
  double min_eigenvalue(std::span<const double> s) const {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < p_.blocks.size(); ++k) {
      const std::size_t dim = p_.blocks[k].dim;
      const RealMatrix m = unpack(s.subspan(layout_.offset[k], dim * (dim + 1) / 2), dim);
      const double v = complex_[k] ? hermitian_eigvals(complex_part(m)).back()
                                   : symmetric_eigvals(m).back();
      lowest = std::min(lowest, v);
    }
    return lowest;
  }

  /// Value of the normalized Farkas functional for the PSD direction y and
  /// the residual of its fit to the span of the constraint rows.
  struct Certificate {
    double value = 0.0;
    double residual = 0.0;
  };
  Certificate certificate(std::span<const double> y) const {
    const std::size_t n = p_.num_vars;
    const double ny = dense::norm2(y);
    Certificate c;
    if (ny == 0.0) return c;
    std::vector<double> g(n, 0.0);
    add_gt(y, g);
    const std::size_t q = rhs_.size();
    // Rows of E are orthonormal, so the least-squares fit is E g.
    std::vector<double> z(q);
    for (std::size_t r = 0; r < q; ++r) z[r] = dense::dot({e_.row_ptr(r), n}, g);
    for (std::size_t r = 0; r < q; ++r)
      for (std::size_t i = 0; i < n; ++i) g[i] -= e_(r, i) * z[r];
    c.value = (dense::dot(y, f0_) + dense::dot(z, rhs_)) / ny;
    c.residual = dense::norm2(g) / ny;
    return c;
  }

 private:
  /// out += G^T v.
  void add_gt(std::span<const double> v, std::vector<double>& out) const {
    for (std::size_t i = 0; i < out.size(); ++i) {
      double acc = 0.0;
      for (const auto& [r, value] : columns_[i]) acc += value * v[r];
      out[i] += acc;
    }
  }

  void h_solve(std::vector<double>& v) const {
    dense::forward_substitute(h_factor_, v);
    dense::backward_substitute_transposed(h_factor_, v);
  }

  const SdpProblem& p_;
  double value_;
  Layout layout_;
  std::vector<bool> complex_;  // block is a Hermitian embedding
  RealMatrix g_;             // svec of F_i as columns
  std::vector<std::vector<std::pair<std::size_t, double>>> columns_;  // sparse G
  std::vector<double> f0_;   // svec of F0
  RealMatrix e_;             // orthonormal rows spanning [A; c^T]
  std::vector<double> rhs_;  // matching right-hand side
  bool inconsistent_ = false;
  RealMatrix h_factor_;
  RealMatrix projector_;       // P
  std::vector<double> shift_;  // W S^{-1} rhs
};

}  // namespace

FeasibilityReport feasibility_oracle(const SdpProblem& problem, double value,
                                     const FeasibilityOptions& options) {
  problem.validate();
  if (options.max_sweeps < 1) throw SdpError("feasibility_oracle: max_sweeps must be positive");
  if (!(options.residual > 0.0)) throw SdpError("feasibility_oracle: residual must be positive");
  const Projector proj(problem, value);

  FeasibilityReport report;
  if (proj.inconsistent()) {
    report.verdict = Feasibility::Infeasible;
    return report;
  }
  // Douglas-Rachford map on z = (zx, zs): a = P_L(z), c = P_C(2a - z),
  // T(z) = (ax, zs + c - as). The shadow a converges to a common point when
  // one exists; otherwise c - a converges to the gap vector between the sets.
  // Steps are extrapolated by Anderson mixing over the last few residuals
  // f = T(z) - z and fall back to the plain step whenever |f| grows.
  const std::size_t n = proj.num_vars();
  const std::size_t dim = n + proj.svec_size();
  std::vector<double> z(dim, 0.0), g(dim), f(dim), ax, as, cs, gap(proj.svec_size()), anchor;
  std::vector<double> g_prev, f_prev, g_safe;
  std::vector<std::vector<double>> dg, df;
  double f_norm_prev = std::numeric_limits<double>::infinity();
  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    proj.affine(std::span<const double>(z).first(n), std::span<const double>(z).subspan(n), ax,
                as);
    report.sweeps = sweep;
    if (sweep % kCheckEvery == 0 || sweep == options.max_sweeps) {
      report.min_eigenvalue = proj.min_eigenvalue(as);
      report.x = ax;
      if (report.min_eigenvalue >= -options.residual &&
          proj.equality_residual(ax) <= options.residual) {
        report.verdict = Feasibility::Feasible;
        return report;
      }
    }
    cs.resize(as.size());
    for (std::size_t r = 0; r < as.size(); ++r) cs[r] = 2.0 * as[r] - z[n + r];
    proj.cone(cs);
    for (std::size_t r = 0; r < as.size(); ++r) gap[r] = cs[r] - as[r];
    for (std::size_t i = 0; i < n; ++i) g[i] = ax[i];
    for (std::size_t r = 0; r < as.size(); ++r) g[n + r] = z[n + r] + gap[r];
    for (std::size_t i = 0; i < dim; ++i) f[i] = g[i] - z[i];
    const double f_norm = dense::norm2(f);
    report.distance = dense::norm2(gap);

    if (f_norm > f_norm_prev && !g_safe.empty()) {
      // The extrapolated point did worse: restart from the last plain step.
      z = g_safe;
      dg.clear();
      df.clear();
      g_prev.clear();
      f_norm_prev = std::numeric_limits<double>::infinity();
      continue;
    } else {
      if (!g_prev.empty()) {
        std::vector<double> dgi(dim), dfi(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          dgi[i] = g[i] - g_prev[i];
          dfi[i] = f[i] - f_prev[i];
        }
        dg.push_back(std::move(dgi));
        df.push_back(std::move(dfi));
        if (dg.size() > static_cast<std::size_t>(kMixMemory)) {
          dg.erase(dg.begin());
          df.erase(df.begin());
        }
      }
      g_prev = g;
      f_prev = f;
      g_safe = g;
      f_norm_prev = f_norm;
      z = g;
      const std::size_t k = df.size();
      if (k > 0) {
        RealMatrix normal(k, k);
        std::vector<double> rhs(k);
        double scale = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
          rhs[i] = dense::dot(df[i], f);
          for (std::size_t j = 0; j <= i; ++j) normal(i, j) = normal(j, i) = dense::dot(df[i], df[j]);
          scale = std::max(scale, normal(i, i));
        }
        for (std::size_t i = 0; i < k; ++i) normal(i, i) += 1e-10 * scale;
        if (auto l = dense::cholesky(normal)) {
          dense::forward_substitute(*l, rhs);
          dense::backward_substitute_transposed(*l, rhs);
          std::vector<double> step(dim, 0.0);
          for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < dim; ++i) step[i] += rhs[j] * dg[j][i];
          // On infeasible instances f tends to the constant gap vector and the
          // mixing coefficients blow up; such steps are dropped.
          if (dense::norm2(step) <= kMaxMixRatio * f_norm)
            for (std::size_t i = 0; i < dim; ++i) z[i] -= step[i];
        }
      }
    }

    if (sweep % kStallWindow != 0) continue;
    // A stationary nonzero gap is the candidate Farkas direction.
    if (!anchor.empty()) {
      double moved = 0.0;
      for (std::size_t r = 0; r < gap.size(); ++r)
        moved += (gap[r] - anchor[r]) * (gap[r] - anchor[r]);
      const auto cert = proj.certificate(gap);
      const double bound = cert.residual * (1.0 + dense::norm2(ax));
      if (std::sqrt(moved) <= 1e-3 * report.distance && cert.value < 0.0 &&
          bound < 0.5 * std::abs(cert.value)) {
        report.verdict = Feasibility::Infeasible;
        return report;
      }
    }
    anchor = gap;
  }
  report.verdict = Feasibility::Inconclusive;
  return report;
}

FeasibilityReport feasibility_oracle(const SdpProblem& problem, double value, int max_sweeps) {
  FeasibilityOptions options;
  options.max_sweeps = max_sweeps;
  return feasibility_oracle(problem, value, options);
}

BisectionResult bisect_optimum(const SdpProblem& problem, double lower, double upper,
                               double width, const FeasibilityOptions& options) {
  if (!(lower <= upper)) throw SdpError("bisect_optimum: lower exceeds upper");
  if (!(width > 0.0)) throw SdpError("bisect_optimum: width must be positive");
  BisectionResult out;
  out.lower = lower;
  out.upper = upper;
  while (out.upper - out.lower > width) {
    const double mid = 0.5 * (out.lower + out.upper);
    const auto report = feasibility_oracle(problem, mid, options);
    ++out.oracle_calls;
    if (report.verdict == Feasibility::Feasible) {
      out.lower = mid;
    } else {
      if (report.verdict == Feasibility::Inconclusive) out.conclusive = false;
      out.upper = mid;
    }
  }
  out.estimate = 0.5 * (out.lower + out.upper);
  return out;
}

}  // namespace swapq::sdp
