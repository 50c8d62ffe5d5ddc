# Copyright 2026 The swapq Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Optimal PPT swap probability of two-qubit states."""

from swapq._swapq import (
    InvariantError,
    analytic_p_xi,
    approx_swap_probability,
    concurrence,
    exact_swap_probability,
    local_purity_gap,
    lower_bound_curve,
    negativity,
    purity,
    random_density,
    upper_bound_curve,
    xi_state,
)

__all__ = [
    "InvariantError",
    "analytic_p_xi",
    "approx_swap_probability",
    "concurrence",
    "exact_swap_probability",
    "local_purity_gap",
    "lower_bound_curve",
    "negativity",
    "purity",
    "random_density",
    "upper_bound_curve",
    "xi_state",
]
