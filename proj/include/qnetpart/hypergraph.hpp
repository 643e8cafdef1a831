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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qnetpart/assignment.hpp"
#include "qnetpart/circuit.hpp"

namespace qnetpart {

/// A qubit over a run of timesteps, or a dummy standing in for everything
/// placed on an external QPU.
struct HNode {
  int qubit = -1;
  int slot = 0;  // time slot at this coarsening level
  int t_begin = 0;
  int t_end = 0;
  bool is_dummy = false;
  QpuId dummy_qpu = kUnassigned;
};

enum class EdgeKind : std::uint8_t { State, Gate, Grouped };

std::string to_string(EdgeKind kind);

struct HEdge {
  EdgeKind kind = EdgeKind::State;
  std::vector<NodeId> root;
  std::vector<NodeId> rec;
  NodeId final_root = -1;
  int gate_count = 0;  // CP gates covered (0 for state-edges)
};

/// Pin of an edge with its membership in the root and receiver sets.
struct Pin {
  static constexpr std::uint8_t kRoot = 1;
  static constexpr std::uint8_t kRec = 2;
  NodeId node;
  std::uint8_t role;
};

struct Incidence {
  EdgeId edge;
  std::uint8_t role;
};

class TemporalHypergraph {
 public:
  TemporalHypergraph() = default;
  TemporalHypergraph(int num_qubits, int depth, int slots, int level);

  /// Adds a node covering the given original timesteps (sorted, unique).
  NodeId add_node(const HNode& node, std::span<const int> covers);
  NodeId add_dummy(QpuId qpu);
  EdgeId add_edge(HEdge edge);
  /// Builds pin and incidence tables; must run after the last mutation.
  void finalize();

  int num_qubits() const { return num_qubits_; }
  int depth() const { return depth_; }
  int slots() const { return slots_; }
  int level() const { return level_; }

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<HNode>& nodes() const { return nodes_; }
  const std::vector<HEdge>& edges() const { return edges_; }
  const HNode& node(NodeId v) const { return nodes_[v]; }
  const HEdge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const int> covers(NodeId v) const {
    return {cover_times_.data() + cover_offsets_[v],
            cover_times_.data() + cover_offsets_[v + 1]};
  }
  std::span<const Pin> pins(EdgeId e) const {
    return {pins_.data() + pin_offsets_[e], pins_.data() + pin_offsets_[e + 1]};
  }
  std::span<const Incidence> incident(NodeId v) const {
    return {incidence_.data() + incidence_offsets_[v],
            incidence_.data() + incidence_offsets_[v + 1]};
  }
  /// Live (non-dummy) nodes occupying time slot `s`.
  std::span<const NodeId> slot_nodes(int s) const {
    return {slot_members_.data() + slot_offsets_[s],
            slot_members_.data() + slot_offsets_[s + 1]};
  }
  std::size_t num_live_nodes() const { return num_live_; }
  std::size_t max_degree() const { return max_degree_; }

  /// Fine node -> node of this (coarser) hypergraph. Empty at level 0.
  const std::vector<NodeId>& parent_of_fine() const { return parent_of_fine_; }
  /// Node of this hypergraph -> the one or two fine nodes merged into it.
  const std::vector<std::array<NodeId, 2>>& children() const { return children_; }

  /// Original node id for live nodes of a cut sub-hypergraph; identity
  /// (empty) for hypergraphs built directly from a circuit.
  const std::vector<NodeId>& origin() const { return origin_; }
  NodeId origin_of(NodeId v) const { return origin_.empty() ? v : origin_[v]; }
  void set_origin(std::vector<NodeId> origin) { origin_ = std::move(origin); }

  /// Line-oriented text dump used in fixtures.
  std::string dump() const;

 private:
  friend TemporalHypergraph coarsen_temporal(const TemporalHypergraph& h);

  int num_qubits_ = 0;
  int depth_ = 0;
  int slots_ = 0;
  int level_ = 0;
  std::vector<HNode> nodes_;
  std::vector<HEdge> edges_;
  std::vector<int> cover_offsets_{0};
  std::vector<int> cover_times_;

  std::vector<int> pin_offsets_;
  std::vector<Pin> pins_;
  std::vector<int> incidence_offsets_;
  std::vector<Incidence> incidence_;
  std::vector<int> slot_offsets_;
  std::vector<NodeId> slot_members_;
  std::size_t num_live_ = 0;
  std::size_t max_degree_ = 0;

  std::vector<NodeId> parent_of_fine_;
  std::vector<std::array<NodeId, 2>> children_;
  std::vector<NodeId> origin_;
};

/// Node id of (qubit, t) in a hypergraph built by build_temporal_hypergraph.
inline NodeId node_id(int qubit, int t, int depth) { return qubit * depth + t; }

/// One node per (qubit, timestep), state-edges between temporal successors,
/// and one hyper-edge per teleportation-compatible gate group.
TemporalHypergraph build_temporal_hypergraph(const Circuit& circuit);

/// Groups the CP gates of `circuit` into hyper-edges. Consecutive CP gates
/// sharing a control qubit (the first qubit listed) merge while every gate on
/// the control in between is a diagonal U or another CP controlled by it;
/// idle timesteps count as identities. The root set spans the control qubit
/// from the first to the last gate of the group.
std::vector<HEdge> group_gates(const Circuit& circuit);

/// Merges nodes (q, 2s) and (q, 2s+1); an odd trailing slot passes through.
/// Dummies pass through unchanged. Edges re-home to merged nodes; an edge
/// whose root and receiver sets collapse onto one node is dropped.
TemporalHypergraph coarsen_temporal(const TemporalHypergraph& h);

/// Every fine node inherits the QPU of its coarse parent.
Assignment project_assignment(const Assignment& coarse_phi,
                              const TemporalHypergraph& h_coarse,
                              const TemporalHypergraph& h_fine);

}  // namespace qnetpart
