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

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "swapq/sdp.hpp"

namespace swapq::sdp {

SparseSymmetric SparseSymmetric::from_dense(const RealMatrix& m, double drop) {
  SparseSymmetric s;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c) {
      const double v = m(r, c);
      if (std::abs(v) > drop)
        s.entries.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), v});
    }
  return s;
}

RealMatrix SparseSymmetric::to_dense(std::size_t dim) const {
  RealMatrix m(dim, dim);
  add_to(m, 1.0);
  return m;
}

double SparseSymmetric::dot(const RealMatrix& m) const {
  double s = 0.0;
  for (const auto& e : entries) {
    if (e.row == e.col)
      s += e.value * m(e.row, e.col);
    else
      s += e.value * (m(e.row, e.col) + m(e.col, e.row));
  }
  return s;
}

void SparseSymmetric::add_to(RealMatrix& out, double scale) const {
  for (const auto& e : entries) {
    out(e.row, e.col) += scale * e.value;
    if (e.row != e.col) out(e.col, e.row) += scale * e.value;
  }
}

RealMatrix PsdBlock::evaluate(std::span<const double> x) const {
  RealMatrix m = constant;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (x[i] != 0.0) coefficients[i].add_to(m, x[i]);
  return m;
}

PsdBlock& SdpProblem::add_block(std::size_t dim) {
  blocks.emplace_back(dim, num_vars);
  return blocks.back();
}

void SdpProblem::add_equality(std::span<const double> row, double rhs) {
  if (row.size() != num_vars) throw SdpError("add_equality: row length differs from num_vars");
  RealMatrix grown(eq_matrix.rows() + 1, num_vars);
  std::copy(eq_matrix.data().begin(), eq_matrix.data().end(), grown.data().begin());
  std::copy(row.begin(), row.end(), grown.row_ptr(eq_matrix.rows()));
  eq_matrix = std::move(grown);
  eq_rhs.push_back(rhs);
}

void SdpProblem::validate() const {
  if (objective.size() != num_vars) throw SdpError("sdp: objective length differs from num_vars");
  if (eq_matrix.cols() != num_vars || eq_matrix.rows() != eq_rhs.size())
    throw SdpError("sdp: equality matrix shape is inconsistent");
  for (const auto& b : blocks) {
    if (b.dim == 0) throw SdpError("sdp: empty PSD block");
    if (b.constant.rows() != b.dim || b.constant.cols() != b.dim)
      throw SdpError("sdp: block constant has the wrong shape");
    if (hermiticity_defect(b.constant) > 0.0) throw SdpError("sdp: block constant not symmetric");
    if (b.coefficients.size() != num_vars)
      throw SdpError("sdp: block coefficient count differs from num_vars");
    for (const auto& f : b.coefficients)
      for (const auto& e : f.entries)
        if (e.row > e.col || e.col >= b.dim)
          throw SdpError("sdp: coefficient entry outside the upper triangle of its block");
  }
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::Stalled: return "Stalled";
    case Status::MaxIterations: return "MaxIterations";
    case Status::NumericalTrouble: return "NumericalTrouble";
    case Status::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

std::string to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Feasible: return "Feasible";
    case Feasibility::Infeasible: return "Infeasible";
    case Feasibility::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

RealMatrix hermitian_embedding(const ComplexMatrix& h) {
  if (!h.is_square()) throw LinalgError("hermitian_embedding: matrix is not square");
  if (hermiticity_defect(h) > kHermitianTol)
    throw LinalgError("hermitian_embedding: matrix is not Hermitian");
  const std::size_t n = h.rows();
  const ComplexMatrix s = hermitian_part(h);
  RealMatrix out(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = s(i, j).real();
      const double im = s(i, j).imag();
      out(i, j) = re;
      out(n + i, n + j) = re;
      out(n + i, j) = im;
      out(i, n + j) = -im;
    }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void write_dense(std::ostream& out, const RealMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
    out << '\n';
  }
}

RealMatrix read_dense(std::istream& in, std::size_t rows, std::size_t cols) {
  RealMatrix m(rows, cols);
  for (auto& v : m.data())
    if (!(in >> v)) throw SdpError("read_problem: truncated matrix");
  return m;
}

void expect_token(std::istream& in, const std::string& token) {
  std::string got;
  if (!(in >> got) || got != token)
    throw SdpError("read_problem: expected '" + token + "', got '" + got + "'");
}

}  // namespace

void write_problem(std::ostream& out, const SdpProblem& problem) {
  problem.validate();
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << problem.num_vars << ' ' << problem.blocks.size() << ' ' << problem.num_equalities()
      << '\n';
  for (std::size_t k = 0; k < problem.blocks.size(); ++k)
    out << (k ? " " : "") << problem.blocks[k].dim;
  out << '\n';
  for (std::size_t i = 0; i < problem.num_vars; ++i) out << (i ? " " : "") << problem.objective[i];
  out << '\n';
  for (const auto& b : problem.blocks) {
    out << "F0\n";
    write_dense(out, b.constant);
    for (std::size_t i = 0; i < problem.num_vars; ++i) {
      out << "F " << i << '\n';
      write_dense(out, b.coefficients[i].to_dense(b.dim));
    }
  }
  out << "A|b\n";
  for (std::size_t r = 0; r < problem.num_equalities(); ++r) {
    for (std::size_t c = 0; c < problem.num_vars; ++c) out << problem.eq_matrix(r, c) << ' ';
    out << problem.eq_rhs[r] << '\n';
  }
  out.precision(old_precision);
}

SdpProblem read_problem(std::istream& in) {
  std::size_t n = 0, nblocks = 0, neq = 0;
  if (!(in >> n >> nblocks >> neq)) throw SdpError("read_problem: bad header");
  SdpProblem p(n);
  std::vector<std::size_t> dims(nblocks);
  for (auto& d : dims)
    if (!(in >> d)) throw SdpError("read_problem: bad block dimensions");
  for (auto& c : p.objective)
    if (!(in >> c)) throw SdpError("read_problem: bad objective");
  for (std::size_t k = 0; k < nblocks; ++k) {
    auto& b = p.add_block(dims[k]);
    expect_token(in, "F0");
    b.constant = read_dense(in, dims[k], dims[k]);
    for (std::size_t i = 0; i < n; ++i) {
      expect_token(in, "F");
      std::size_t idx = 0;
      if (!(in >> idx) || idx != i) throw SdpError("read_problem: coefficient index mismatch");
      b.coefficients[i] = SparseSymmetric::from_dense(read_dense(in, dims[k], dims[k]));
    }
  }
  expect_token(in, "A|b");
  for (std::size_t r = 0; r < neq; ++r) {
    std::vector<double> row(n);
    for (auto& v : row)
      if (!(in >> v)) throw SdpError("read_problem: truncated equality row");
    double rhs = 0.0;
    if (!(in >> rhs)) throw SdpError("read_problem: truncated equality rhs");
    p.add_equality(row, rhs);
  }
  p.validate();
  return p;
}

}  // namespace swapq::sdp
