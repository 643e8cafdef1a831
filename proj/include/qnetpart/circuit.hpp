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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qnetpart {

/// Gate kinds. Only `SingleU` and `ControlledPhase` survive
/// `rewrite_to_basis`; the remaining kinds are parser aliases.
enum class GateKind : std::uint8_t {
  SingleU,
  ControlledPhase,
  H,
  X,
  Z,
  RZ,
  CX,
  CZ,
};

std::string to_string(GateKind kind);

struct Gate {
  GateKind kind = GateKind::SingleU;
  // (theta, phi, lambda) for U; theta only for CP and RZ.
  std::array<double, 3> params{};
  // One index for single-qubit kinds, ordered (control, target) otherwise.
  std::array<int, 2> qubits{-1, -1};
  int timestep = 0;
  // Diagonal in the computational basis. For SingleU: theta == 0.
  bool diagonal = false;

  bool is_two_qubit() const {
    return kind == GateKind::ControlledPhase || kind == GateKind::CX ||
           kind == GateKind::CZ;
  }
  bool in_basis() const {
    return kind == GateKind::SingleU || kind == GateKind::ControlledPhase;
  }
  int arity() const { return is_two_qubit() ? 2 : 1; }
  bool acts_on(int q) const {
    return qubits[0] == q || (is_two_qubit() && qubits[1] == q);
  }

  static Gate u(int qubit, double theta, double phi, double lambda);
  static Gate cp(int control, int target, double theta);
  static Gate alias(GateKind kind, std::span<const int> qubits,
                    double angle = 0.0);
};

/// A depth-scheduled circuit. Timestep `t` holds gates on pairwise disjoint
/// qubits; a qubit without a gate at `t` is an implicit identity.
class Circuit {
 public:
  explicit Circuit(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  int depth() const { return static_cast<int>(timesteps_.size()); }
  const std::vector<std::vector<Gate>>& timesteps() const {
    return timesteps_;
  }
  std::span<const Gate> at(int t) const { return timesteps_.at(t); }

  /// Places `gate` at the earliest timestep after every gate already on its
  /// qubits and returns that timestep.
  int append(Gate gate);

  /// Places `gate` at timestep `t`, growing the depth as needed.
  void place(Gate gate, int t);

  /// Gate acting on `qubit` at `t`, if any.
  const Gate* gate_on(int qubit, int t) const;

  std::size_t gate_count() const;
  std::size_t two_qubit_gate_count() const;
  bool in_basis() const;

 private:
  void check_qubits(const Gate& gate) const;

  int num_qubits_;
  std::vector<std::vector<Gate>> timesteps_;
  std::vector<int> frontier_;  // next free timestep per qubit
  // occupancy_[t * n + q] = index into timesteps_[t], or -1
  std::vector<int> occupancy_;
};

/// Rewrites every gate into the {U, CP} basis and reschedules as soon as
/// possible, preserving per-qubit gate order.
///   cz      -> CP(pi)
///   cx(c,t) -> U_H(t) CP(pi)(c,t) U_H(t), U_H = U(pi/2, 0, pi)
///   rz/u1   -> U(0, 0, lambda)
///   h       -> U(pi/2, 0, pi)
///   x       -> U(pi, 0, pi)
///   z       -> U(0, 0, pi)
Circuit rewrite_to_basis(const Circuit& circuit);

/// Random fixed-depth circuit: at every timestep `floor(fraction * n / 2)`
/// disjoint qubit pairs receive CP(theta), every other qubit a random
/// non-diagonal U. All angles are uniform in (0, 2 pi).
Circuit generate_cp_fraction(int num_qubits, int depth, double fraction,
                             std::uint64_t seed);

}  // namespace qnetpart
