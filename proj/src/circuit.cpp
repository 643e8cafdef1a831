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

#include "qnetpart/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qnetpart {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::SingleU: return "u";
    case GateKind::ControlledPhase: return "cp";
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Z: return "z";
    case GateKind::RZ: return "rz";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
  }
  return "?";
}

Gate Gate::u(int qubit, double theta, double phi, double lambda) {
  Gate g;
  g.kind = GateKind::SingleU;
  g.params = {theta, phi, lambda};
  g.qubits = {qubit, -1};
  g.diagonal = theta == 0.0;
  return g;
}

Gate Gate::cp(int control, int target, double theta) {
  Gate g;
  g.kind = GateKind::ControlledPhase;
  g.params = {theta, 0.0, 0.0};
  g.qubits = {control, target};
  g.diagonal = true;
  return g;
}

Gate Gate::alias(GateKind kind, std::span<const int> qubits, double angle) {
  Gate g;
  g.kind = kind;
  g.params = {angle, 0.0, 0.0};
  g.qubits = {qubits.empty() ? -1 : qubits[0],
              qubits.size() > 1 ? qubits[1] : -1};
  g.diagonal = kind == GateKind::Z || kind == GateKind::RZ ||
               kind == GateKind::CZ;
  if (g.is_two_qubit() != (qubits.size() == 2)) {
    throw std::invalid_argument("gate '" + to_string(kind) +
                                "' has the wrong number of qubits");
  }
  return g;
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) {
    throw std::invalid_argument("circuit needs at least one qubit");
  }
  frontier_.assign(num_qubits, 0);
}

void Circuit::check_qubits(const Gate& gate) const {
  for (int i = 0; i < gate.arity(); ++i) {
    const int q = gate.qubits[i];
    if (q < 0 || q >= num_qubits_) {
      throw std::out_of_range("qubit index " + std::to_string(q) +
                              " out of range for " +
                              std::to_string(num_qubits_) + " qubits");
    }
  }
  if (gate.is_two_qubit() && gate.qubits[0] == gate.qubits[1]) {
    throw std::invalid_argument("two-qubit gate on a single qubit " +
                                std::to_string(gate.qubits[0]));
  }
}

int Circuit::append(Gate gate) {
  check_qubits(gate);
  int t = frontier_[gate.qubits[0]];
  if (gate.is_two_qubit()) t = std::max(t, frontier_[gate.qubits[1]]);
  place(gate, t);
  return t;
}

void Circuit::place(Gate gate, int t) {
  check_qubits(gate);
  if (t < 0) throw std::invalid_argument("negative timestep");
  if (t >= depth()) {
    timesteps_.resize(t + 1);
    occupancy_.resize(static_cast<std::size_t>(t + 1) * num_qubits_, -1);
  }
  for (int i = 0; i < gate.arity(); ++i) {
    if (occupancy_[static_cast<std::size_t>(t) * num_qubits_ + gate.qubits[i]] >= 0) {
      throw std::invalid_argument("qubit " + std::to_string(gate.qubits[i]) +
                                  " already busy at timestep " +
                                  std::to_string(t));
    }
  }
  gate.timestep = t;
  const int index = static_cast<int>(timesteps_[t].size());
  for (int i = 0; i < gate.arity(); ++i) {
    occupancy_[static_cast<std::size_t>(t) * num_qubits_ + gate.qubits[i]] = index;
    frontier_[gate.qubits[i]] = std::max(frontier_[gate.qubits[i]], t + 1);
  }
  timesteps_[t].push_back(gate);
}

const Gate* Circuit::gate_on(int qubit, int t) const {
  if (t < 0 || t >= depth() || qubit < 0 || qubit >= num_qubits_) {
    return nullptr;
  }
  const int index = occupancy_[static_cast<std::size_t>(t) * num_qubits_ + qubit];
  return index < 0 ? nullptr : &timesteps_[t][index];
}

std::size_t Circuit::gate_count() const {
  std::size_t count = 0;
  for (const auto& step : timesteps_) count += step.size();
  return count;
}

std::size_t Circuit::two_qubit_gate_count() const {
  std::size_t count = 0;
  for (const auto& step : timesteps_) {
    count += std::count_if(step.begin(), step.end(),
                           [](const Gate& g) { return g.is_two_qubit(); });
  }
  return count;
}

bool Circuit::in_basis() const {
  for (const auto& step : timesteps_) {
    for (const Gate& g : step) {
      if (!g.in_basis()) return false;
    }
  }
  return true;
}

Circuit rewrite_to_basis(const Circuit& circuit) {
  Circuit out(circuit.num_qubits());
  const auto hadamard = [](int q) { return Gate::u(q, kPi / 2, 0.0, kPi); };
  for (const auto& step : circuit.timesteps()) {
    for (const Gate& g : step) {
      const int a = g.qubits[0];
      const int b = g.qubits[1];
      switch (g.kind) {
        case GateKind::SingleU:
          out.append(Gate::u(a, g.params[0], g.params[1], g.params[2]));
          break;
        case GateKind::ControlledPhase:
          out.append(Gate::cp(a, b, g.params[0]));
          break;
        case GateKind::H: out.append(hadamard(a)); break;
        case GateKind::X: out.append(Gate::u(a, kPi, 0.0, kPi)); break;
        case GateKind::Z: out.append(Gate::u(a, 0.0, 0.0, kPi)); break;
        case GateKind::RZ:
          out.append(Gate::u(a, 0.0, 0.0, g.params[0]));
          break;
        case GateKind::CZ: out.append(Gate::cp(a, b, kPi)); break;
        case GateKind::CX:
          out.append(hadamard(b));
          out.append(Gate::cp(a, b, kPi));
          out.append(hadamard(b));
          break;
      }
    }
  }
  return out;
}

Circuit generate_cp_fraction(int num_qubits, int depth, double fraction,
                             std::uint64_t seed) {
  if (num_qubits < 2) throw std::invalid_argument("cp-fraction needs n >= 2");
  if (depth < 1) throw std::invalid_argument("cp-fraction needs depth >= 1");
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("cp-fraction must lie in [0, 1]");
  }
  // Guard against 0.7 * 20 / 2 = 6.999... style rounding.
  const int pairs =
      static_cast<int>(std::floor(fraction * num_qubits / 2.0 + 1e-9));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle_dist(0.0, 2.0 * kPi);
  const auto angle = [&] {
    double a = 0.0;
    while (a == 0.0) a = angle_dist(rng);
    return a;
  };

  Circuit circuit(num_qubits);
  std::vector<int> order(num_qubits);
  for (int t = 0; t < depth; ++t) {
    for (int q = 0; q < num_qubits; ++q) order[q] = q;
    // Fisher-Yates with explicit draws keeps the stream layout fixed.
    for (int i = num_qubits - 1; i > 0; --i) {
      std::uniform_int_distribution<int> pick(0, i);
      std::swap(order[i], order[pick(rng)]);
    }
    for (int p = 0; p < pairs; ++p) {
      circuit.place(Gate::cp(order[2 * p], order[2 * p + 1], angle()), t);
    }
    for (int i = 2 * pairs; i < num_qubits; ++i) {
      const double theta = angle();
      const double phi = angle();
      const double lambda = angle();
      circuit.place(Gate::u(order[i], theta, phi, lambda), t);
    }
  }
  return circuit;
}

}  // namespace qnetpart
