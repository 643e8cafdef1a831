# Copyright 2026 The qnetpart Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Quantum circuit partitioning over QPU networks."""

import json

from ._core import (
    SCHEMA_VERSION,
    Circuit,
    Network,
    PhaseError,
    __version__,
    forest_cost,
    generate_cp_fraction,
    hierarchy_sizes,
    load_qasm,
    make_network,
    parse_qasm,
    run_json,
)


def partition(network, *, circuit=None, cp=None, capacity=0, mode="direct", chi=4, seed=0,
              matching="exact", table_threshold=10, threads=1, timing=True):
    """Runs the partitioning pipeline once and returns the report as a dict."""
    if (circuit is None) == (cp is None):
        raise ValueError("give exactly one of circuit and cp")
    return json.loads(
        run_json(network, circuit=None if circuit is None else str(circuit),
                 cp=None if cp is None else tuple(cp), capacity=capacity, mode=mode,
                 chi=chi, seed=seed, matching=matching, table_threshold=table_threshold,
                 threads=threads, timing=timing))


__all__ = [
    "SCHEMA_VERSION",
    "Circuit",
    "Network",
    "PhaseError",
    "__version__",
    "forest_cost",
    "generate_cp_fraction",
    "hierarchy_sizes",
    "load_qasm",
    "make_network",
    "parse_qasm",
    "partition",
    "run_json",
]
