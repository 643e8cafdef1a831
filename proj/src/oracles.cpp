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

#include "qnetpart/oracles.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnetpart {

namespace {

// Nodes reachable from `start` using only the chosen links.
Mask closure(Mask start, const std::vector<Link>& links, std::uint32_t chosen) {
  Mask reach = start;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::uint32_t s = chosen; s; s &= s - 1) {
      const auto [a, b] = links[std::countr_zero(s)];
      const bool in_a = reach & qpu_bit(a);
      const bool in_b = reach & qpu_bit(b);
      if (in_a != in_b) {
        reach |= qpu_bit(a) | qpu_bit(b);
        grew = true;
      }
    }
  }
  return reach;
}

}  // namespace

int brute_force_steiner_forest(const NetworkGraph& network, Mask roots, Mask receivers,
                               int max_links) {
  if (roots == 0) {
    if (receivers != 0) throw std::invalid_argument("receivers without any root QPU");
    return 0;
  }
  const Mask tree = root_tree(roots, network).nodes;
  if ((receivers & ~tree) == 0) return 0;
  std::vector<Link> links;
  for (const Link& l : network.links()) {
    if (!((tree & qpu_bit(l.first)) && (tree & qpu_bit(l.second)))) links.push_back(l);
  }
  if (static_cast<int>(links.size()) > max_links) {
    throw std::invalid_argument("Steiner oracle budget exceeded: " +
                                std::to_string(links.size()) + " links");
  }
  const int m = static_cast<int>(links.size());
  for (int k = 1; k <= m; ++k) {
    // Gosper's hack walks every k-subset of the links.
    for (std::uint32_t s = (1u << k) - 1; s < (1u << m);) {
      if ((receivers & ~closure(tree, links, s)) == 0) return k;
      const std::uint32_t c = s & (~s + 1);
      const std::uint32_t r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  throw std::logic_error("receivers cannot reach the root tree");
}

namespace {

class PartitionSearch {
 public:
  PartitionSearch(const TemporalHypergraph& h, const CostEngine& engine, Assignment start,
                  std::vector<QpuId> targets)
      : h_(h), engine_(engine), net_(engine.network()), phi_(std::move(start)),
        targets_(std::move(targets)), loads_(net_.size(), h.depth()) {
    for (std::size_t v = 0; v < h.num_nodes(); ++v) {
      if (phi_.qpu[v] == kUnassigned) {
        free_.push_back(static_cast<NodeId>(v));
      } else if (!h.node(static_cast<NodeId>(v)).is_dummy) {
        if (!loads_.fits(h, static_cast<NodeId>(v), phi_.qpu[v], net_.capacity(phi_.qpu[v]))) {
          throw std::invalid_argument("fixed nodes exceed capacity");
        }
        loads_.add(h, static_cast<NodeId>(v), phi_.qpu[v], +1);
      }
    }
    // An edge is priced once its last free pin (in search order) is placed.
    std::vector<int> position(h.num_nodes(), -1);
    for (std::size_t i = 0; i < free_.size(); ++i) position[free_[i]] = static_cast<int>(i);
    closing_.resize(free_.size() + 1);
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
      int last = -1;
      for (const Pin& pin : h.pins(static_cast<EdgeId>(e))) last = std::max(last, position[pin.node]);
      closing_[last + 1].push_back(static_cast<EdgeId>(e));
    }
  }

  OracleResult run() {
    long fixed = 0;
    for (EdgeId e : closing_[0]) fixed += edge_cost(h_, e, phi_, engine_);
    dfs(0, fixed);
    if (best_cost_ == kNone) throw std::invalid_argument("no capacity-feasible assignment");
    for (std::size_t i = 0; i < free_.size(); ++i) phi_.qpu[free_[i]] = best_[i];
    return {phi_, best_cost_};
  }

 private:
  static constexpr long kNone = std::numeric_limits<long>::max();

  void dfs(std::size_t depth, long partial) {
    if (partial >= best_cost_) return;
    if (depth == free_.size()) {
      best_cost_ = partial;
      best_.resize(free_.size());
      for (std::size_t i = 0; i < free_.size(); ++i) best_[i] = phi_.qpu[free_[i]];
      return;
    }
    const NodeId v = free_[depth];
    for (QpuId q : targets_) {
      if (!loads_.fits(h_, v, q, net_.capacity(q))) continue;
      phi_.qpu[v] = q;
      loads_.add(h_, v, q, +1);
      long next = partial;
      for (EdgeId e : closing_[depth + 1]) next += edge_cost(h_, e, phi_, engine_);
      dfs(depth + 1, next);
      loads_.add(h_, v, q, -1);
      phi_.qpu[v] = kUnassigned;
    }
  }

  const TemporalHypergraph& h_;
  const CostEngine& engine_;
  const NetworkGraph& net_;
  Assignment phi_;
  std::vector<QpuId> targets_;
  LoadTable loads_;
  std::vector<NodeId> free_;
  std::vector<std::vector<EdgeId>> closing_;
  std::vector<QpuId> best_;
  long best_cost_ = kNone;
};

}  // namespace

OracleResult brute_force_partition(const TemporalHypergraph& h, const CostEngine& engine,
                                   const Assignment& fixed, std::span<const QpuId> targets,
                                   int max_nodes) {
  if (fixed.size() != h.num_nodes()) {
    throw std::invalid_argument("fixed assignment does not match the hypergraph");
  }
  Assignment start = fixed;
  int free_count = 0;
  for (std::size_t v = 0; v < h.num_nodes(); ++v) {
    const HNode& node = h.node(static_cast<NodeId>(v));
    if (node.is_dummy) {
      start.qpu[v] = node.dummy_qpu;
      start.locked[v] = 1;
    } else if (!start.is_locked(v)) {
      start.qpu[v] = kUnassigned;
      ++free_count;
    }
  }
  if (free_count > max_nodes) {
    throw std::invalid_argument("partition oracle budget exceeded: " +
                                std::to_string(free_count) + " free nodes");
  }
  std::vector<QpuId> order(targets.begin(), targets.end());
  if (order.empty()) {
    order.resize(engine.network().size());
    std::iota(order.begin(), order.end(), 0);
  }
  std::sort(order.begin(), order.end());
  return PartitionSearch(h, engine, std::move(start), std::move(order)).run();
}

OracleResult brute_force_partition(const TemporalHypergraph& h, const CostEngine& engine,
                                   int max_nodes) {
  return brute_force_partition(h, engine, Assignment(h.num_nodes()), {}, max_nodes);
}

}  // namespace qnetpart
