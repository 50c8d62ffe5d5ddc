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

// Infeasible-start primal-dual path following. Notation inside this file
// follows the LMI form documented in sdp.hpp: S_k is the slack of block k and
// Y_k its multiplier. The Newton system in (dx, dlambda) is
//
//   [ M  A^T ] [dx     ]   [ g     ]      M_ij = sum_k <F_ik W_k F_jk W_k>
//   [ A   0  ] [dlambda] = [ b - Ax]
//
// with W_k the Nesterov-Todd scaling point (W S W = Y). Afterwards
// dS = F(dx) + (F(x) - S) and dY = R - W dS W, where R is the scaled
// centering target. The equality rows are orthonormalized first, so the
// system is solved through the null space N of A: dx = A^T r + N dz with
// N^T M N dz factored by Cholesky.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>

#include "swapq/dense.hpp"
#include "swapq/sdp.hpp"

namespace swapq::sdp {

namespace {

using dense::frobenius_dot;

constexpr double kFeasibleResidual = 1e-10;
constexpr std::size_t kStallWindow = 10;
constexpr double kStallChange = 1e-9;

struct NtScaling {
  RealMatrix g;        // W = G G^T
  RealMatrix g_inv;
  RealMatrix w;
  std::vector<double> d;  // G^T S G = G^{-1} Y G^{-T} = diag(d)
};

// Rows of F_i W that are not identically zero.
struct SparseProduct {
  std::vector<std::uint32_t> rows;
  std::vector<std::vector<double>> values;  // values[r][col]
};

RealMatrix sandwich(const RealMatrix& a, const RealMatrix& x) {
  // a x a^T
  return a * x * transpose(a);
}

double min_step_eigenvalue(const RealMatrix& lower_inv, const RealMatrix& dx) {
  const RealMatrix m = sandwich(lower_inv, dx);
  return symmetric_eigvals(dense::symmetrize(m)).back();
}

class InteriorPoint {
 public:
  InteriorPoint(const SdpProblem& p, const SolverOptions& o) : p_(p), opt_(o) {
    n_ = p.num_vars;
    reduce_equalities();
    m_ = b_.size();
    nblocks_ = p.blocks.size();
    total_dim_ = 0;
    for (const auto& b : p.blocks) total_dim_ += b.dim;
    active_.resize(nblocks_);
    for (std::size_t k = 0; k < nblocks_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        if (!p.blocks[k].coefficients[i].empty()) active_[k].push_back(i);

    double f0 = 0.0;
    for (const auto& b : p.blocks) f0 += std::pow(frobenius_norm(b.constant), 2);
    norm_f0_ = std::sqrt(f0);
    norm_b_ = dense::norm2(b_);
    norm_c_ = dense::norm2(p.objective);
  }

  SdpSolution run();

 private:
  void reduce_equalities();
  void initialize();
  void compute_residuals();
  bool build_scaling();
  bool factor_kkt();
  void solve_newton(std::span<const double> rhs, std::vector<double>& dx,
                    std::vector<double>& dlam) const;
  // Solves for a direction given per-block centering targets R_k.
  void direction(const std::vector<RealMatrix>& target, std::vector<double>& dx,
                 std::vector<double>& dlam, std::vector<RealMatrix>& ds,
                 std::vector<RealMatrix>& dy) const;
  double max_step(const std::vector<RealMatrix>& lower_inv,
                  const std::vector<RealMatrix>& d) const;
  SdpSolution snapshot(Status status, int iter) const;

  const SdpProblem& p_;
  SolverOptions opt_;
  // Orthonormal rows spanning the equality rows: a_ = t_ A, b_ = t_ b.
  RealMatrix a_, t_;
  RealMatrix null_;  // n x (n - m), orthonormal columns with a_ null_ = 0
  RealMatrix null_t_;
  std::vector<double> b_;
  std::size_t n_ = 0, m_ = 0, nblocks_ = 0, total_dim_ = 0;
  std::vector<std::vector<std::size_t>> active_;
  double norm_f0_ = 0, norm_b_ = 0, norm_c_ = 0;

  // Iterate.
  std::vector<double> x_, lam_;
  std::vector<RealMatrix> s_, y_;

  // Residuals and measures at the iterate.
  std::vector<RealMatrix> rp_;   // F(x) - S
  std::vector<double> req_;      // b - A x
  std::vector<double> rd_;       // -c - F^T(Y) + A^T lambda
  double pobj_ = 0, dobj_ = 0, gap_ = 0, mu_ = 0;
  double pinf_ = 0, dinf_ = 0, relgap_ = 0;

  std::vector<NtScaling> nt_;
  RealMatrix m_full_;            // M
  RealMatrix m_null_;            // M N
  std::optional<RealMatrix> chol_;  // Cholesky factor of N^T M N (+ shift)
};

void InteriorPoint::reduce_equalities() {
  const std::size_t m = p_.num_equalities();
  std::vector<std::vector<double>> q, t;
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<double> v(p_.eq_matrix.row_ptr(r), p_.eq_matrix.row_ptr(r) + n_);
    std::vector<double> tv(m, 0.0);
    tv[r] = 1.0;
    const double norm0 = dense::norm2(v);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < q.size(); ++j) {
        const double c = dense::dot(q[j], v);
        for (std::size_t i = 0; i < n_; ++i) v[i] -= c * q[j][i];
        for (std::size_t i = 0; i < m; ++i) tv[i] -= c * t[j][i];
      }
    const double nv = dense::norm2(v);
    if (!(nv > 1e-10 * std::max(norm0, 1.0))) continue;
    for (double& e : v) e /= nv;
    for (double& e : tv) e /= nv;
    q.push_back(std::move(v));
    t.push_back(std::move(tv));
  }
  a_ = RealMatrix(q.size(), n_);
  t_ = RealMatrix(q.size(), m);
  b_.assign(q.size(), 0.0);
  for (std::size_t j = 0; j < q.size(); ++j) {
    std::copy(q[j].begin(), q[j].end(), a_.row_ptr(j));
    std::copy(t[j].begin(), t[j].end(), t_.row_ptr(j));
    b_[j] = dense::dot(t[j], p_.eq_rhs);
  }
  std::vector<std::vector<double>> basis;
  for (std::size_t e = 0; e < n_ && q.size() + basis.size() < n_; ++e) {
    std::vector<double> v(n_, 0.0);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& r : q) {
        const double c = dense::dot(r, v);
        for (std::size_t i = 0; i < n_; ++i) v[i] -= c * r[i];
      }
      for (const auto& r : basis) {
        const double c = dense::dot(r, v);
        for (std::size_t i = 0; i < n_; ++i) v[i] -= c * r[i];
      }
    }
    const double nv = dense::norm2(v);
    if (nv < 1e-8) continue;
    for (double& x : v) x /= nv;
    basis.push_back(std::move(v));
  }
  null_ = RealMatrix(n_, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t i = 0; i < n_; ++i) null_(i, c) = basis[c][i];
  null_t_ = transpose(null_);
}

void InteriorPoint::initialize() {
  x_.assign(n_, 0.0);
  lam_.assign(m_, 0.0);
  s_.clear();
  y_.clear();
  for (std::size_t k = 0; k < nblocks_; ++k) {
    const auto& b = p_.blocks[k];
    const double nk = static_cast<double>(b.dim);
    double zeta = std::max(10.0, std::sqrt(nk));
    double eta = std::max({10.0, std::sqrt(nk), frobenius_norm(b.constant)});
    for (std::size_t i : active_[k]) {
      double fn = 0.0;
      for (const auto& e : b.coefficients[i].entries)
        fn += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
      fn = std::sqrt(fn);
      zeta = std::max(zeta, nk * (1.0 + std::abs(p_.objective[i])) / (1.0 + fn));
      eta = std::max(eta, fn);
    }
    s_.push_back(eta * RealMatrix::identity(b.dim));
    y_.push_back(zeta * RealMatrix::identity(b.dim));
  }
}

void InteriorPoint::compute_residuals() {
  rp_.resize(nblocks_);
  pobj_ = dense::dot(p_.objective, x_);
  dobj_ = dense::dot(b_, lam_);
  gap_ = 0.0;
  double rp_norm = 0.0;
  for (std::size_t k = 0; k < nblocks_; ++k) {
    rp_[k] = p_.blocks[k].evaluate(x_) - s_[k];
    rp_norm += std::pow(frobenius_norm(rp_[k]), 2);
    dobj_ += frobenius_dot(p_.blocks[k].constant, y_[k]);
    gap_ += frobenius_dot(s_[k], y_[k]);
  }
  req_.assign(m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    double s = b_[r];
    const double* row = a_.row_ptr(r);
    for (std::size_t i = 0; i < n_; ++i) s -= row[i] * x_[i];
    req_[r] = s;
  }
  rd_.assign(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = -p_.objective[i];
    for (std::size_t r = 0; r < m_; ++r) s += a_(r, i) * lam_[r];
    rd_[i] = s;
  }
  for (std::size_t k = 0; k < nblocks_; ++k)
    for (std::size_t i : active_[k]) rd_[i] -= p_.blocks[k].coefficients[i].dot(y_[k]);

  mu_ = gap_ / static_cast<double>(std::max<std::size_t>(total_dim_, 1));
  pinf_ = std::max(std::sqrt(rp_norm) / (1.0 + norm_f0_), dense::norm2(req_) / (1.0 + norm_b_));
  dinf_ = dense::norm2(rd_) / (1.0 + norm_c_);
  const double denom = std::max(1.0, std::abs(pobj_));
  relgap_ = std::max(std::abs(dobj_ - pobj_), std::abs(gap_)) / denom;
}

bool InteriorPoint::build_scaling() {
  nt_.resize(nblocks_);
  for (std::size_t k = 0; k < nblocks_; ++k) {
    auto ly = dense::cholesky(y_[k]);
    auto ls = dense::cholesky(s_[k]);
    if (!ly || !ls) return false;
    const RealMatrix b = transpose(*ls) * *ly;
    const dense::Svd svd = dense::svd(b);
    const std::size_t nk = p_.blocks[k].dim;
    NtScaling sc;
    sc.d = svd.sigma;
    for (double v : sc.d)
      if (!(v > 0.0)) return false;
    // G = L_Y V D^{-1/2},  G^{-1} = D^{1/2} V^T L_Y^{-1}.
    RealMatrix vd = svd.v;
    for (std::size_t r = 0; r < nk; ++r)
      for (std::size_t c = 0; c < nk; ++c) vd(r, c) /= std::sqrt(sc.d[c]);
    sc.g = *ly * vd;
    RealMatrix vt = transpose(svd.v);
    for (std::size_t r = 0; r < nk; ++r)
      for (std::size_t c = 0; c < nk; ++c) vt(r, c) *= std::sqrt(sc.d[r]);
    sc.g_inv = vt * dense::lower_inverse(*ly);
    sc.w = dense::symmetrize(sc.g * transpose(sc.g));
    nt_[k] = std::move(sc);
  }
  return true;
}

bool InteriorPoint::factor_kkt() {
  RealMatrix kkt(n_, n_);
  for (std::size_t k = 0; k < nblocks_; ++k) {
    const auto& blk = p_.blocks[k];
    const RealMatrix& w = nt_[k].w;
    const std::size_t nk = blk.dim;
    // T_i = F_i W restricted to its nonzero rows.
    std::vector<SparseProduct> prod(active_[k].size());
    std::vector<std::int32_t> slot(nk, -1);
    for (std::size_t a = 0; a < active_[k].size(); ++a) {
      const auto& f = blk.coefficients[active_[k][a]];
      auto& sp = prod[a];
      auto row_slot = [&](std::uint32_t r) -> std::vector<double>& {
        if (slot[r] < 0) {
          slot[r] = static_cast<std::int32_t>(sp.rows.size());
          sp.rows.push_back(r);
          sp.values.emplace_back(nk, 0.0);
        }
        return sp.values[static_cast<std::size_t>(slot[r])];
      };
      for (const auto& e : f.entries) {
        {
          auto& row = row_slot(e.row);
          const double* wr = w.row_ptr(e.col);
          for (std::size_t c = 0; c < nk; ++c) row[c] += e.value * wr[c];
        }
        if (e.row != e.col) {
          auto& row = row_slot(e.col);
          const double* wr = w.row_ptr(e.row);
          for (std::size_t c = 0; c < nk; ++c) row[c] += e.value * wr[c];
        }
      }
      for (std::uint32_t r : sp.rows) slot[r] = -1;
    }
    // M_ij += trace(T_i T_j) = sum_{a in rows_i, b in rows_j} T_i[a][b] T_j[b][a].
    for (std::size_t a = 0; a < prod.size(); ++a) {
      const auto& ti = prod[a];
      const std::size_t i = active_[k][a];
      for (std::size_t bidx = a; bidx < prod.size(); ++bidx) {
        const auto& tj = prod[bidx];
        double s = 0.0;
        for (std::size_t ra = 0; ra < ti.rows.size(); ++ra) {
          const auto& tia = ti.values[ra];
          const std::uint32_t row_a = ti.rows[ra];
          for (std::size_t rb = 0; rb < tj.rows.size(); ++rb)
            s += tia[tj.rows[rb]] * tj.values[rb][row_a];
        }
        const std::size_t j = active_[k][bidx];
        kkt(i, j) += s;
        if (i != j) kkt(j, i) += s;
      }
    }
  }
  m_full_ = std::move(kkt);
  m_null_ = m_full_ * null_;
  RealMatrix reduced = dense::symmetrize(null_t_ * m_null_);
  double scale = 0.0;
  for (std::size_t i = 0; i < reduced.rows(); ++i) scale = std::max(scale, reduced(i, i));
  if (!(scale > 0.0) || !std::isfinite(scale)) return false;
  chol_ = dense::cholesky(reduced);
  // Escalating diagonal shift for numerically semidefinite Schur complements.
  for (double shift = 1e-15; !chol_ && shift <= 1e-6; shift *= 10.0) {
    RealMatrix shifted = reduced;
    for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += shift * scale;
    chol_ = dense::cholesky(shifted);
  }
  return chol_.has_value();
}

void InteriorPoint::solve_newton(std::span<const double> rhs, std::vector<double>& dx,
                                 std::vector<double>& dlam) const {
  // dx = a^T r2 + N dz,  N^T M N dz = N^T (r1 - M a^T r2),  dlam = a (r1 - M dx).
  std::vector<double> dx0(n_, 0.0);
  for (std::size_t r = 0; r < m_; ++r)
    for (std::size_t i = 0; i < n_; ++i) dx0[i] += a_(r, i) * rhs[n_ + r];
  std::vector<double> r1(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    const double* mi = m_full_.row_ptr(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += mi[j] * dx0[j];
    r1[i] -= s;
  }
  const std::size_t nz = null_.cols();
  std::vector<double> dz(nz, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* ni = null_.row_ptr(i);
    for (std::size_t c = 0; c < nz; ++c) dz[c] += ni[c] * r1[i];
  }
  dense::forward_substitute(*chol_, dz);
  dense::backward_substitute_transposed(*chol_, dz);
  dx = dx0;
  for (std::size_t i = 0; i < n_; ++i) {
    const double* ni = null_.row_ptr(i);
    double s = 0.0;
    for (std::size_t c = 0; c < nz; ++c) s += ni[c] * dz[c];
    dx[i] += s;
  }
  // r1 - M N dz = rhs1 - M dx.
  for (std::size_t i = 0; i < n_; ++i) {
    const double* mi = m_null_.row_ptr(i);
    double s = 0.0;
    for (std::size_t c = 0; c < nz; ++c) s += mi[c] * dz[c];
    r1[i] -= s;
  }
  dlam.assign(m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) dlam[r] = dense::dot(std::span<const double>(a_.row_ptr(r), n_), r1);
}

void InteriorPoint::direction(const std::vector<RealMatrix>& target, std::vector<double>& dx,
                              std::vector<double>& dlam, std::vector<RealMatrix>& ds,
                              std::vector<RealMatrix>& dy) const {
  std::vector<double> rhs(n_ + m_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) rhs[i] = -rd_[i];
  for (std::size_t k = 0; k < nblocks_; ++k) {
    const RealMatrix wrw = nt_[k].w * rp_[k] * nt_[k].w;
    RealMatrix t = target[k] - wrw;
    for (std::size_t i : active_[k]) rhs[i] += p_.blocks[k].coefficients[i].dot(t);
  }
  for (std::size_t r = 0; r < m_; ++r) rhs[n_ + r] = req_[r];
  solve_newton(rhs, dx, dlam);
  // Two rounds of iterative refinement against the assembled system.
  for (int round = 0; round < 2; ++round) {
    std::vector<double> res(rhs);
    for (std::size_t i = 0; i < n_; ++i) {
      const double* mi = m_full_.row_ptr(i);
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += mi[j] * dx[j];
      for (std::size_t r = 0; r < m_; ++r) s += a_(r, i) * dlam[r];
      res[i] -= s;
    }
    for (std::size_t r = 0; r < m_; ++r)
      res[n_ + r] -= dense::dot(std::span<const double>(a_.row_ptr(r), n_), dx);
    std::vector<double> cx, cl;
    solve_newton(res, cx, cl);
    for (std::size_t i = 0; i < n_; ++i) dx[i] += cx[i];
    for (std::size_t r = 0; r < m_; ++r) dlam[r] += cl[r];
  }

  ds.resize(nblocks_);
  dy.resize(nblocks_);
  for (std::size_t k = 0; k < nblocks_; ++k) {
    RealMatrix d = rp_[k];
    for (std::size_t i : active_[k])
      if (dx[i] != 0.0) p_.blocks[k].coefficients[i].add_to(d, dx[i]);
    dy[k] = dense::symmetrize(target[k] - nt_[k].w * d * nt_[k].w);
    ds[k] = std::move(d);
  }
}

double InteriorPoint::max_step(const std::vector<RealMatrix>& lower_inv,
                               const std::vector<RealMatrix>& d) const {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nblocks_; ++k) {
    const double lmin = min_step_eigenvalue(lower_inv[k], d[k]);
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

SdpSolution InteriorPoint::snapshot(Status status, int iter) const {
  SdpSolution s;
  s.x = x_;
  s.objective_value = pobj_;
  s.dual_value = dobj_;
  s.duality_gap = relgap_;
  s.primal_residual = pinf_;
  s.dual_residual = dinf_;
  s.status = status;
  s.iterations = iter;
  s.dual_blocks = y_;
  s.slack_blocks = s_;
  s.eq_multipliers.assign(p_.num_equalities(), 0.0);
  for (std::size_t j = 0; j < m_; ++j)
    for (std::size_t r = 0; r < p_.num_equalities(); ++r) s.eq_multipliers[r] += t_(j, r) * lam_[j];
  return s;
}

SdpSolution InteriorPoint::run() {
  initialize();
  const double tol = opt_.tol;
  std::optional<SdpSolution> best;      // smallest max(relgap, pinf, dinf)
  std::optional<SdpSolution> feasible;  // latest iterate with pinf <= kFeasibleResidual
  std::vector<double> feasible_objectives;
  double best_merit = std::numeric_limits<double>::infinity();
  int since_improved = 0;

  auto remember = [&](int iter) {
    const double merit = std::max({relgap_, pinf_, dinf_});
    if (merit < best_merit * 0.999) {
      best_merit = merit;
      best = snapshot(Status::NumericalTrouble, iter);
      since_improved = 0;
    } else {
      ++since_improved;
    }
    if (pinf_ <= kFeasibleResidual) {
      feasible = snapshot(Status::Stalled, iter);
      feasible_objectives.push_back(pobj_);
    } else {
      feasible_objectives.clear();
    }
  };
  // Objective of consecutive feasible iterates constant over the window.
  auto primal_stalled = [&] {
    const std::size_t k = feasible_objectives.size();
    if (k <= kStallWindow) return false;
    const double last = feasible_objectives.back();
    return std::abs(last - feasible_objectives[k - 1 - kStallWindow]) <=
           kStallChange * (1.0 + std::abs(last));
  };
  auto finish = [&](Status fallback, int iter) {
    SdpSolution out;
    if (feasible) {
      out = *feasible;
    } else {
      out = best ? *best : snapshot(fallback, iter);
      out.status = fallback;
    }
    out.iterations = iter;
    return out;
  };

  int iter = 0;
  for (;; ++iter) {
    compute_residuals();
    if (opt_.verbose)
      std::fprintf(stderr, "%3d pobj % .10e dobj % .10e gap %.2e pinf %.2e dinf %.2e mu %.2e\n",
                   iter, pobj_, dobj_, relgap_, pinf_, dinf_, mu_);
    if (!std::isfinite(pobj_) || !std::isfinite(dobj_) || !std::isfinite(mu_))
      return finish(Status::NumericalTrouble, iter);
    if (relgap_ <= tol && pinf_ <= tol && dinf_ <= tol) return snapshot(Status::Optimal, iter);

    // Primal infeasibility certificate: dual objective diverging to -inf while
    // the homogeneous dual constraints hold.
    if (!feasible && dobj_ < 0.0 && iter > 5) {
      std::vector<double> hom(n_, 0.0);
      for (std::size_t i = 0; i < n_; ++i) hom[i] = rd_[i] + p_.objective[i];
      if (dense::norm2(hom) / -dobj_ < tol && -dobj_ > 1e8 * (1.0 + norm_c_))
        return snapshot(Status::Infeasible, iter);
    }

    remember(iter);
    if (iter >= opt_.max_iter)
      return finish(feasible ? Status::Stalled : Status::MaxIterations, iter);
    if (primal_stalled()) return finish(Status::Stalled, iter);
    if (!feasible && since_improved > 25) break;

    if (!build_scaling() || !factor_kkt()) break;

    std::vector<RealMatrix> ly_inv(nblocks_), ls_inv(nblocks_);
    for (std::size_t k = 0; k < nblocks_; ++k) {
      ly_inv[k] = dense::lower_inverse(*dense::cholesky(y_[k]));
      ls_inv[k] = dense::lower_inverse(*dense::cholesky(s_[k]));
    }

    // Predictor (affine scaling): target -Y.
    std::vector<RealMatrix> target(nblocks_);
    for (std::size_t k = 0; k < nblocks_; ++k) target[k] = -y_[k];
    std::vector<double> dx, dlam;
    std::vector<RealMatrix> ds, dy;
    direction(target, dx, dlam, ds, dy);
    const double ap = std::min(1.0, max_step(ls_inv, ds));
    const double ad = std::min(1.0, max_step(ly_inv, dy));

    double mu_aff = 0.0;
    for (std::size_t k = 0; k < nblocks_; ++k) {
      RealMatrix sa = s_[k];
      sa += ap * ds[k];
      RealMatrix ya = y_[k];
      ya += ad * dy[k];
      mu_aff += frobenius_dot(sa, ya);
    }
    mu_aff /= static_cast<double>(total_dim_);
    const double expon = std::max(1.0, 3.0 * std::min(ap, ad) * std::min(ap, ad));
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu_, expon), 0.0, 1.0);

    // Corrector: V o (dY^ + dS^) = sigma mu I - V^2 - dY^_a o dS^_a in the scaled space.
    for (std::size_t k = 0; k < nblocks_; ++k) {
      const auto& sc = nt_[k];
      const std::size_t nk = p_.blocks[k].dim;
      const RealMatrix dyh = sandwich(sc.g_inv, dy[k]);
      const RealMatrix dsh = transpose(sc.g) * ds[k] * sc.g;
      const RealMatrix cross = dyh * dsh;
      RealMatrix h(nk, nk);
      for (std::size_t i = 0; i < nk; ++i)
        for (std::size_t j = 0; j < nk; ++j) {
          double r = -0.5 * (cross(i, j) + cross(j, i));
          if (i == j) r += sigma * mu_ - sc.d[i] * sc.d[i];
          h(i, j) = 2.0 * r / (sc.d[i] + sc.d[j]);
        }
      target[k] = dense::symmetrize(sandwich(sc.g, h));
    }
    direction(target, dx, dlam, ds, dy);
    const double gamma = opt_.step_damping;
    const double sp = std::min(1.0, gamma * max_step(ls_inv, ds));
    const double sd = std::min(1.0, gamma * max_step(ly_inv, dy));

    for (std::size_t i = 0; i < n_; ++i) x_[i] += sp * dx[i];
    for (std::size_t k = 0; k < nblocks_; ++k) {
      s_[k] += sp * ds[k];
      y_[k] += sd * dy[k];
      s_[k] = dense::symmetrize(s_[k]);
      y_[k] = dense::symmetrize(y_[k]);
    }
    // lam is the least-squares multiplier of Y: a^T lam = proj(c + F^T(Y)).
    std::vector<double> g(p_.objective);
    for (std::size_t k = 0; k < nblocks_; ++k)
      for (std::size_t i : active_[k]) g[i] += p_.blocks[k].coefficients[i].dot(y_[k]);
    for (std::size_t r = 0; r < m_; ++r)
      lam_[r] = dense::dot(std::span<const double>(a_.row_ptr(r), n_), g);
    if (sp < 1e-12 && sd < 1e-12) break;
  }

  return finish(Status::NumericalTrouble, iter);
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options) {
  problem.validate();
  if (!(options.tol > 0.0)) throw SdpError("solve: tol must be positive");
  InteriorPoint ipm(problem, options);
  return ipm.run();
}

SdpSolution solve(const SdpProblem& problem, double tol, int max_iter) {
  SolverOptions o;
  o.tol = tol;
  o.max_iter = max_iter;
  return solve(problem, o);
}

}  // namespace swapq::sdp
