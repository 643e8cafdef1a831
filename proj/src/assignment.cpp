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

#include "qnetpart/assignment.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qnetpart/hypergraph.hpp"
#include "qnetpart/network.hpp"

namespace qnetpart {

bool Assignment::complete() const {
  return std::none_of(qpu.begin(), qpu.end(), [](QpuId q) { return q == kUnassigned; });
}

LoadTable::LoadTable(int num_qpus, int depth)
    : num_qpus_(num_qpus), depth_(depth),
      load_(static_cast<std::size_t>(num_qpus) * depth, 0) {}

LoadTable::LoadTable(const TemporalHypergraph& h, const Assignment& phi, int num_qpus)
    : LoadTable(num_qpus, h.depth()) {
  for (std::size_t v = 0; v < h.num_nodes(); ++v) {
    const QpuId q = phi.qpu[v];
    if (q == kUnassigned || h.node(static_cast<NodeId>(v)).is_dummy) continue;
    if (q < 0 || q >= num_qpus) throw std::out_of_range("assignment names a missing QPU");
    add(h, static_cast<NodeId>(v), q, +1);
  }
}

void LoadTable::add(const TemporalHypergraph& h, NodeId v, QpuId q, int delta) {
  for (int t : h.covers(v)) load_[index(q, t)] += delta;
}

bool LoadTable::fits(const TemporalHypergraph& h, NodeId v, QpuId q, int capacity) const {
  for (int t : h.covers(v)) {
    if (load_[index(q, t)] + 1 > capacity) return false;
  }
  return true;
}

void check_feasible(const TemporalHypergraph& h, const Assignment& phi,
                    const NetworkGraph& network) {
  if (phi.size() != h.num_nodes()) {
    throw std::invalid_argument("assignment size does not match the hypergraph");
  }
  for (std::size_t v = 0; v < h.num_nodes(); ++v) {
    const HNode& node = h.node(static_cast<NodeId>(v));
    const QpuId q = phi.qpu[v];
    if (q == kUnassigned) {
      throw std::invalid_argument("node " + std::to_string(v) + " is unassigned");
    }
    if (q < 0 || q >= network.size()) {
      throw std::invalid_argument("node " + std::to_string(v) + " is on a missing QPU");
    }
    if (node.is_dummy && q != node.dummy_qpu) {
      throw std::invalid_argument("dummy node " + std::to_string(v) + " moved off its QPU");
    }
  }
  const LoadTable loads(h, phi, network.size());
  for (QpuId q = 0; q < network.size(); ++q) {
    for (int t = 0; t < h.depth(); ++t) {
      if (loads.load(q, t) > network.capacity(q)) {
        throw std::invalid_argument("QPU " + std::to_string(q) + " over capacity at timestep " +
                                    std::to_string(t));
      }
    }
  }
}

bool is_feasible(const TemporalHypergraph& h, const Assignment& phi,
                 const NetworkGraph& network) {
  try {
    check_feasible(h, phi, network);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

Assignment initial_assignment(const TemporalHypergraph& h, const NetworkGraph& network,
                              std::span<const QpuId> targets) {
  std::vector<QpuId> all;
  if (targets.empty()) {
    all.resize(network.size());
    std::iota(all.begin(), all.end(), 0);
    targets = all;
  }
  long room = 0;
  for (QpuId q : targets) room += network.capacity(q);
  if (static_cast<long>(h.num_qubits()) > room && h.level() == 0 && h.origin().empty()) {
    throw std::invalid_argument("insufficient capacity: " + std::to_string(h.num_qubits()) +
                                " qubits on " + std::to_string(room) + " slots");
  }

  Assignment phi(h.num_nodes());
  LoadTable loads(network.size(), h.depth());
  std::vector<NodeId> order;
  for (std::size_t v = 0; v < h.num_nodes(); ++v) {
    const HNode& node = h.node(static_cast<NodeId>(v));
    if (node.is_dummy) {
      phi.qpu[v] = node.dummy_qpu;
      phi.locked[v] = 1;
    } else {
      order.push_back(static_cast<NodeId>(v));
    }
  }
  std::stable_sort(order.begin(), order.end(), [&h](NodeId a, NodeId b) {
    const HNode& x = h.node(a);
    const HNode& y = h.node(b);
    return x.qubit != y.qubit ? x.qubit < y.qubit : x.t_begin < y.t_begin;
  });

  int prev_qubit = -1;
  QpuId prev_qpu = kUnassigned;
  for (NodeId v : order) {
    const HNode& node = h.node(v);
    QpuId chosen = kUnassigned;
    if (node.qubit == prev_qubit && prev_qpu != kUnassigned &&
        loads.fits(h, v, prev_qpu, network.capacity(prev_qpu))) {
      chosen = prev_qpu;
    } else {
      for (QpuId q : targets) {
        if (loads.fits(h, v, q, network.capacity(q))) {
          chosen = q;
          break;
        }
      }
    }
    if (chosen == kUnassigned) {
      throw std::invalid_argument("insufficient capacity to place qubit " +
                                  std::to_string(node.qubit) + " at timestep " +
                                  std::to_string(node.t_begin));
    }
    phi.qpu[v] = chosen;
    loads.add(h, v, chosen, +1);
    prev_qubit = node.qubit;
    prev_qpu = chosen;
  }
  return phi;
}

}  // namespace qnetpart
