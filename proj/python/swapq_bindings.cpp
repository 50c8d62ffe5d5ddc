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

// Python module `swapq._swapq`. States cross the boundary as 4 x 4 complex
// numpy arrays and are validated on entry.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>

#include <algorithm>
#include <complex>
#include <string>

#include "swapq/measures.hpp"
#include "swapq/states.hpp"
#include "swapq/swap.hpp"

namespace py = pybind11;
using swapq::ComplexMatrix;
using swapq::DensityMatrix;

namespace {

using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

ComplexMatrix from_array(const ComplexArray& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-d array");
  ComplexMatrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), m.data().begin());
  return m;
}

ComplexArray to_array(const ComplexMatrix& m) {
  ComplexArray a({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), a.mutable_data());
  return a;
}

DensityMatrix density(const ComplexArray& a) { return DensityMatrix(from_array(a)); }

py::dict result_dict(const swapq::SwapResult& r) {
  py::dict d;
  d["p"] = r.probability;
  d["raw_p"] = r.raw_probability;
  d["status"] = swapq::sdp::to_string(r.status);
  d["duality_gap"] = r.duality_gap;
  d["iterations"] = r.iterations;
  d["epsilon"] = r.epsilon;
  d["target_residual"] = r.target_residual;
  d["valid_operation"] = r.check.all();
  d["choi"] = to_array(r.choi.matrix());
  return d;
}

}  // namespace

PYBIND11_MODULE(_swapq, m) {
  m.doc() = "Optimal PPT swap probability of two-qubit states";

  py::register_exception<swapq::InvariantError>(m, "InvariantError", PyExc_ValueError);

  m.def("xi_state", [](double x, double y) { return to_array(swapq::xi_state(x, y).matrix()); },
        py::arg("x"), py::arg("y"));
  m.def(
      "random_density",
      [](int rank, std::uint64_t seed) {
        return to_array(swapq::random_density({rank, seed}).matrix());
      },
      py::arg("rank"), py::arg("seed"));

  m.def("concurrence", [](const ComplexArray& a) { return swapq::concurrence(density(a)); });
  m.def("negativity", [](const ComplexArray& a) { return swapq::negativity(density(a)); });
  m.def("purity", [](const ComplexArray& a) { return swapq::purity(density(a)); });
  m.def("local_purity_gap",
        [](const ComplexArray& a) { return swapq::local_purity_gap(density(a)); });

  m.def(
      "exact_swap_probability",
      [](const ComplexArray& a, double tol) {
        const DensityMatrix rho = density(a);
        py::gil_scoped_release release;
        auto r = swapq::exact_swap_probability(rho, tol);
        py::gil_scoped_acquire acquire;
        return result_dict(r);
      },
      py::arg("rho"), py::arg("tol") = swapq::kDefaultSwapTol);
  m.def(
      "approx_swap_probability",
      [](const ComplexArray& a, double eps, double tol) {
        const DensityMatrix rho = density(a);
        py::gil_scoped_release release;
        auto r = swapq::approx_swap_probability(rho, eps, tol);
        py::gil_scoped_acquire acquire;
        return result_dict(r);
      },
      py::arg("rho"), py::arg("eps"), py::arg("tol") = swapq::kDefaultSwapTol);

  m.def("analytic_p_xi", &swapq::analytic_p_xi, py::arg("x"), py::arg("y"));
  m.def("lower_bound_curve", &swapq::lower_bound_curve, py::arg("c"));
  m.def("upper_bound_curve", &swapq::upper_bound_curve, py::arg("dp"));
}
