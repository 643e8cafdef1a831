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

#include <cstdint>
#include <span>
#include <vector>

namespace qnetpart {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using QpuId = std::int32_t;

inline constexpr QpuId kUnassigned = -1;

/// Node -> QPU map over one hypergraph. Dummy nodes are locked at their QPU.
struct Assignment {
  std::vector<QpuId> qpu;
  std::vector<std::uint8_t> locked;

  Assignment() = default;
  explicit Assignment(std::size_t num_nodes)
      : qpu(num_nodes, kUnassigned), locked(num_nodes, 0) {}

  std::size_t size() const { return qpu.size(); }
  QpuId operator[](NodeId v) const { return qpu[v]; }
  bool is_locked(NodeId v) const { return locked[v] != 0; }
  bool complete() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

class TemporalHypergraph;
class NetworkGraph;

/// Per (QPU, original timestep) occupancy. A node occupies one slot at every
/// timestep it covers; dummy nodes occupy nothing.
class LoadTable {
 public:
  LoadTable(int num_qpus, int depth);
  LoadTable(const TemporalHypergraph& h, const Assignment& phi, int num_qpus);

  int load(QpuId q, int t) const { return load_[index(q, t)]; }
  void add(const TemporalHypergraph& h, NodeId v, QpuId q, int delta);
  /// True when `v` can be placed on `q` without exceeding `capacity` at any
  /// of its timesteps. `v` must not currently be counted on `q`.
  bool fits(const TemporalHypergraph& h, NodeId v, QpuId q, int capacity) const;
  int num_qpus() const { return num_qpus_; }
  int depth() const { return depth_; }

 private:
  std::size_t index(QpuId q, int t) const {
    return static_cast<std::size_t>(q) * depth_ + t;
  }
  int num_qpus_;
  int depth_;
  std::vector<int> load_;
};

/// Throws when `phi` leaves a live node unassigned or overfills any QPU.
void check_feasible(const TemporalHypergraph& h, const Assignment& phi,
                    const NetworkGraph& network);
bool is_feasible(const TemporalHypergraph& h, const Assignment& phi,
                 const NetworkGraph& network);

/// Block layout: live nodes are visited qubit by qubit; each node stays on
/// the QPU of the qubit's previous node when that fits and otherwise takes
/// the first QPU in `targets` with room. On a full circuit hypergraph this
/// fills QPU 0 to capacity, then QPU 1, and so on, with every timestep of a
/// qubit on the same QPU. Dummies are pinned and locked. An empty `targets`
/// means every QPU of `network`.
Assignment initial_assignment(const TemporalHypergraph& h,
                              const NetworkGraph& network,
                              std::span<const QpuId> targets = {});

}  // namespace qnetpart
