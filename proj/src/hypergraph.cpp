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

#include "qnetpart/hypergraph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qnetpart {

std::string to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::State: return "state";
    case EdgeKind::Gate: return "gate";
    case EdgeKind::Grouped: return "grouped";
  }
  return "?";
}

TemporalHypergraph::TemporalHypergraph(int num_qubits, int depth, int slots,
                                       int level)
    : num_qubits_(num_qubits), depth_(depth), slots_(slots), level_(level) {}

NodeId TemporalHypergraph::add_node(const HNode& node,
                                    std::span<const int> covers) {
  nodes_.push_back(node);
  cover_times_.insert(cover_times_.end(), covers.begin(), covers.end());
  cover_offsets_.push_back(static_cast<int>(cover_times_.size()));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId TemporalHypergraph::add_dummy(QpuId qpu) {
  HNode node;
  node.is_dummy = true;
  node.dummy_qpu = qpu;
  return add_node(node, {});
}

EdgeId TemporalHypergraph::add_edge(HEdge edge) {
  edges_.push_back(std::move(edge));
  return static_cast<EdgeId>(edges_.size() - 1);
}

void TemporalHypergraph::finalize() {
  const std::size_t n = nodes_.size();

  pin_offsets_.assign(1, 0);
  pins_.clear();
  std::vector<Pin> scratch;
  for (const HEdge& e : edges_) {
    scratch.clear();
    for (NodeId v : e.root) scratch.push_back({v, Pin::kRoot});
    for (NodeId v : e.rec) scratch.push_back({v, Pin::kRec});
    std::sort(scratch.begin(), scratch.end(),
              [](const Pin& a, const Pin& b) { return a.node < b.node; });
    for (const Pin& p : scratch) {
      if (p.node < 0 || static_cast<std::size_t>(p.node) >= n) {
        throw std::logic_error("edge references a missing node");
      }
      if (!pins_.empty() && static_cast<int>(pins_.size()) > pin_offsets_.back() &&
          pins_.back().node == p.node) {
        pins_.back().role |= p.role;
      } else {
        pins_.push_back(p);
      }
    }
    pin_offsets_.push_back(static_cast<int>(pins_.size()));
  }

  std::vector<int> degree(n, 0);
  for (const Pin& p : pins_) ++degree[p.node];
  incidence_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    incidence_offsets_[v + 1] = incidence_offsets_[v] + degree[v];
  }
  incidence_.assign(pins_.size(), {});
  std::vector<int> fill(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    for (int i = pin_offsets_[e]; i < pin_offsets_[e + 1]; ++i) {
      incidence_[fill[pins_[i].node]++] = {static_cast<EdgeId>(e), pins_[i].role};
    }
  }
  max_degree_ = degree.empty() ? 0 : static_cast<std::size_t>(
                                         *std::max_element(degree.begin(), degree.end()));

  num_live_ = 0;
  std::vector<int> per_slot(slots_ + 1, 0);
  for (const HNode& node : nodes_) {
    if (node.is_dummy) continue;
    if (node.slot < 0 || node.slot >= slots_) {
      throw std::logic_error("node slot outside the hypergraph's slot range");
    }
    ++per_slot[node.slot + 1];
    ++num_live_;
  }
  slot_offsets_.assign(slots_ + 1, 0);
  for (int s = 0; s < slots_; ++s) slot_offsets_[s + 1] = slot_offsets_[s] + per_slot[s + 1];
  slot_members_.assign(num_live_, 0);
  std::vector<int> slot_fill(slot_offsets_.begin(), slot_offsets_.end() - 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (!nodes_[v].is_dummy) slot_members_[slot_fill[nodes_[v].slot]++] = static_cast<NodeId>(v);
  }
}

std::string TemporalHypergraph::dump() const {
  std::ostringstream out;
  out << "hypergraph qubits=" << num_qubits_ << " depth=" << depth_
      << " slots=" << slots_ << " level=" << level_ << " nodes=" << nodes_.size()
      << " edges=" << edges_.size() << "\n";
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    const HNode& node = nodes_[v];
    if (node.is_dummy) {
      out << "node " << v << " dummy qpu=" << node.dummy_qpu << "\n";
    } else {
      out << "node " << v << " q=" << node.qubit << " slot=" << node.slot
          << " span=" << node.t_begin << ".." << node.t_end << "\n";
    }
  }
  const auto list = [&out](const std::vector<NodeId>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? "," : "") << ids[i];
  };
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out << "edge " << e << " " << to_string(edges_[e].kind) << " root=";
    list(edges_[e].root);
    out << " rec=";
    list(edges_[e].rec);
    out << " final=" << edges_[e].final_root << "\n";
  }
  return out.str();
}

std::vector<HEdge> group_gates(const Circuit& circuit) {
  const int depth = circuit.depth();
  std::vector<HEdge> groups;
  for (int c = 0; c < circuit.num_qubits(); ++c) {
    int first = -1;
    int last = -1;
    std::vector<NodeId> targets;
    const auto close = [&] {
      if (first < 0) return;
      HEdge edge;
      edge.gate_count = static_cast<int>(targets.size());
      edge.kind = edge.gate_count > 1 ? EdgeKind::Grouped : EdgeKind::Gate;
      for (int t = first; t <= last; ++t) edge.root.push_back(node_id(c, t, depth));
      edge.rec = targets;
      std::sort(edge.rec.begin(), edge.rec.end());
      edge.final_root = node_id(c, last, depth);
      groups.push_back(std::move(edge));
      first = last = -1;
      targets.clear();
    };
    for (int t = 0; t < depth; ++t) {
      const Gate* g = circuit.gate_on(c, t);
      if (g == nullptr) continue;
      if (g->kind == GateKind::ControlledPhase) {
        if (g->qubits[0] == c) {
          if (first < 0) first = t;
          last = t;
          targets.push_back(node_id(g->qubits[1], t, depth));
        } else {
          close();
        }
      } else if (!g->diagonal) {
        close();
      }
    }
    close();
  }
  return groups;
}

TemporalHypergraph build_temporal_hypergraph(const Circuit& circuit) {
  if (!circuit.in_basis()) {
    throw std::invalid_argument("circuit must be in the {U, CP} basis");
  }
  const int n = circuit.num_qubits();
  const int d = circuit.depth();
  TemporalHypergraph h(n, d, d, 0);
  for (int q = 0; q < n; ++q) {
    for (int t = 0; t < d; ++t) {
      HNode node;
      node.qubit = q;
      node.slot = node.t_begin = node.t_end = t;
      const int cover[] = {t};
      h.add_node(node, cover);
    }
  }
  for (int q = 0; q < n; ++q) {
    for (int t = 0; t + 1 < d; ++t) {
      HEdge edge;
      edge.kind = EdgeKind::State;
      edge.root = {node_id(q, t, d)};
      edge.rec = {node_id(q, t + 1, d)};
      edge.final_root = edge.root[0];
      h.add_edge(std::move(edge));
    }
  }
  for (HEdge& edge : group_gates(circuit)) h.add_edge(std::move(edge));
  h.finalize();
  return h;
}

TemporalHypergraph coarsen_temporal(const TemporalHypergraph& h) {
  if (h.slots() < 2) {
    throw std::invalid_argument("temporal coarsening needs at least two slots");
  }
  TemporalHypergraph coarse(h.num_qubits(), h.depth(), (h.slots() + 1) / 2,
                            h.level() + 1);

  const std::size_t n = h.num_nodes();
  std::vector<NodeId> parent(n, -1);
  std::vector<std::array<NodeId, 2>> children;
  std::unordered_map<std::int64_t, NodeId> by_key;
  for (std::size_t v = 0; v < n; ++v) {
    const HNode& node = h.node(static_cast<NodeId>(v));
    if (node.is_dummy) {
      parent[v] = static_cast<NodeId>(children.size());
      children.push_back({static_cast<NodeId>(v), -1});
      continue;
    }
    const std::int64_t key =
        static_cast<std::int64_t>(node.qubit) * (h.slots() + 1) + node.slot / 2;
    auto [it, inserted] = by_key.try_emplace(key, static_cast<NodeId>(children.size()));
    if (inserted) {
      children.push_back({static_cast<NodeId>(v), -1});
    } else {
      auto& pair = children[it->second];
      if (pair[1] >= 0) throw std::logic_error("more than two nodes merge into one slot");
      pair[1] = static_cast<NodeId>(v);
    }
    parent[v] = it->second;
  }

  std::vector<int> merged;
  for (const auto& pair : children) {
    const HNode& a = h.node(pair[0]);
    if (a.is_dummy) {
      coarse.add_dummy(a.dummy_qpu);
      continue;
    }
    HNode node = a;
    node.slot = a.slot / 2;
    merged.assign(h.covers(pair[0]).begin(), h.covers(pair[0]).end());
    if (pair[1] >= 0) {
      const HNode& b = h.node(pair[1]);
      node.t_begin = std::min(a.t_begin, b.t_begin);
      node.t_end = std::max(a.t_end, b.t_end);
      merged.insert(merged.end(), h.covers(pair[1]).begin(), h.covers(pair[1]).end());
      std::sort(merged.begin(), merged.end());
      merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    }
    coarse.add_node(node, merged);
  }

  const auto rehome = [&parent](const std::vector<NodeId>& ids) {
    std::vector<NodeId> out;
    out.reserve(ids.size());
    for (NodeId v : ids) out.push_back(parent[v]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  for (const HEdge& e : h.edges()) {
    HEdge edge;
    edge.kind = e.kind;
    edge.gate_count = e.gate_count;
    edge.root = rehome(e.root);
    edge.rec = rehome(e.rec);
    edge.final_root = e.final_root >= 0 ? parent[e.final_root] : -1;
    if (edge.root.size() == 1 && edge.rec.size() == 1 && edge.root[0] == edge.rec[0]) {
      continue;
    }
    coarse.add_edge(std::move(edge));
  }
  coarse.parent_of_fine_ = std::move(parent);
  coarse.children_ = std::move(children);
  coarse.finalize();
  return coarse;
}

Assignment project_assignment(const Assignment& coarse_phi,
                              const TemporalHypergraph& h_coarse,
                              const TemporalHypergraph& h_fine) {
  const auto& parent = h_coarse.parent_of_fine();
  if (parent.size() != h_fine.num_nodes() || coarse_phi.size() != h_coarse.num_nodes()) {
    throw std::invalid_argument("coarse assignment does not match the hypergraph pair");
  }
  Assignment fine(h_fine.num_nodes());
  for (std::size_t v = 0; v < h_fine.num_nodes(); ++v) {
    const QpuId q = coarse_phi.qpu[parent[v]];
    if (q == kUnassigned) {
      throw std::invalid_argument("coarse assignment is missing node " +
                                  std::to_string(parent[v]));
    }
    fine.qpu[v] = q;
    fine.locked[v] = h_fine.node(static_cast<NodeId>(v)).is_dummy ? 1 : 0;
  }
  return fine;
}

}  // namespace qnetpart
