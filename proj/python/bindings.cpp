// Copyright 2026 The qnetpart Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnetpart/bench.hpp"
#include "qnetpart/circuit.hpp"
#include "qnetpart/coarsening.hpp"
#include "qnetpart/cost.hpp"
#include "qnetpart/network.hpp"
#include "qnetpart/qasm.hpp"

namespace py = pybind11;

namespace qnetpart {
namespace {

Mask to_mask(const std::vector<QpuId>& qpus, const NetworkGraph& g) {
  Mask m = 0;
  for (QpuId q : qpus) {
    if (q < 0 || q >= g.size()) throw std::out_of_range("QPU id out of range");
    m |= qpu_bit(q);
  }
  return m;
}

std::string run_json(const std::string& network, std::optional<std::string> circuit,
                     std::optional<std::tuple<int, int, double>> cp, int capacity,
                     const std::string& mode, int chi, std::uint64_t seed,
                     const std::string& matching, int table_threshold, int threads,
                     bool timing) {
  RunConfig config;
  if (circuit) config.circuit_path = *circuit;
  if (cp) config.cp = CpParams{std::get<0>(*cp), std::get<1>(*cp), std::get<2>(*cp)};
  config.topology = network;
  config.capacity = capacity;
  config.mode = parse_mode(mode);
  config.chi = chi;
  config.seed = seed;
  config.matching = parse_matching_mode(matching);
  config.table_threshold = table_threshold;
  config.threads = threads;
  py::gil_scoped_release release;
  return to_json(run(config, seed), timing).dump();
}

}  // namespace
}  // namespace qnetpart

PYBIND11_MODULE(_core, m) {
  using namespace qnetpart;
  m.attr("__version__") = kVersion;
  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  py::register_exception<PhaseError>(m, "PhaseError", PyExc_RuntimeError);

  py::class_<Circuit>(m, "Circuit")
      .def_property_readonly("num_qubits", &Circuit::num_qubits)
      .def_property_readonly("depth", &Circuit::depth)
      .def("gate_count", &Circuit::gate_count)
      .def("two_qubit_gate_count", &Circuit::two_qubit_gate_count);

  m.def("generate_cp_fraction", &generate_cp_fraction, py::arg("num_qubits"), py::arg("depth"),
        py::arg("fraction"), py::arg("seed"));
  m.def("parse_qasm", [](const std::string& text) { return parse_qasm(text); }, py::arg("text"));
  m.def("load_qasm", &load_qasm_file, py::arg("path"));

  py::class_<NetworkGraph>(m, "Network")
      .def_property_readonly("size", &NetworkGraph::size)
      .def_property_readonly("links", &NetworkGraph::links)
      .def_property_readonly("total_capacity", &NetworkGraph::total_capacity)
      .def("capacity", &NetworkGraph::capacity, py::arg("qpu"))
      .def("distance", &NetworkGraph::distance, py::arg("a"), py::arg("b"))
      .def("dump", &NetworkGraph::dump);

  m.def("make_network", &parse_topology, py::arg("spec"), py::arg("capacity"),
        py::arg("seed") = 0);

  m.def(
      "forest_cost",
      [](const NetworkGraph& g, const std::vector<QpuId>& roots,
         const std::vector<QpuId>& receivers) {
        return forest_cost({to_mask(roots, g), to_mask(receivers, g)}, g).cost;
      },
      py::arg("network"), py::arg("roots"), py::arg("receivers"));

  m.def(
      "hierarchy_sizes",
      [](const NetworkGraph& g, int chi, const std::string& matching) {
        std::vector<int> sizes;
        for (const auto& level : coarsen_network_recursive(g, chi, parse_matching_mode(matching)).levels) {
          sizes.push_back(level.size());
        }
        return sizes;
      },
      py::arg("network"), py::arg("chi"), py::arg("matching") = "exact");

  m.def("run_json", &run_json, py::arg("network"), py::arg("circuit") = py::none(),
        py::arg("cp") = py::none(), py::arg("capacity") = 0, py::arg("mode") = "direct",
        py::arg("chi") = 4, py::arg("seed") = 0, py::arg("matching") = "exact",
        py::arg("table_threshold") = CostEngine::kDefaultPrecomputeThreshold,
        py::arg("threads") = 1, py::arg("timing") = true);
}
