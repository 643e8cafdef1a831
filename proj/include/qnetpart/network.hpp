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
#include <string>
#include <utility>
#include <vector>

#include "qnetpart/assignment.hpp"

namespace qnetpart {

using Link = std::pair<QpuId, QpuId>;

struct Qpu {
  int capacity = 0;
  std::vector<QpuId> members;  // finest-level QPU ids, sorted
};

/// Connected QPU network with unit-length links and an all-pairs hop table.
class NetworkGraph {
 public:
  NetworkGraph() = default;
  /// Normalizes links (i < j, no duplicates, no self-loops) and throws if the
  /// resulting graph is disconnected or a capacity is negative.
  NetworkGraph(std::vector<Qpu> qpus, std::vector<Link> links, int level = 0);

  int size() const { return static_cast<int>(qpus_.size()); }
  int level() const { return level_; }
  const std::vector<Qpu>& qpus() const { return qpus_; }
  int capacity(QpuId q) const { return qpus_[q].capacity; }
  const std::vector<QpuId>& members(QpuId q) const { return qpus_[q].members; }
  long total_capacity() const;

  const std::vector<Link>& links() const { return links_; }
  std::span<const QpuId> neighbors(QpuId q) const {
    return {adjacency_.data() + adjacency_offsets_[q],
            adjacency_.data() + adjacency_offsets_[q + 1]};
  }
  bool has_link(QpuId a, QpuId b) const { return distance(a, b) == 1; }
  int distance(QpuId a, QpuId b) const {
    return dist_[static_cast<std::size_t>(a) * qpus_.size() + b];
  }
  int diameter() const;

  /// FNV-1a over size, capacities and links.
  std::uint64_t fingerprint() const;
  /// "qpu <id> cap=<c> members=<..> : <neighbors>" per line.
  std::string dump() const;

 private:
  std::vector<Qpu> qpus_;
  std::vector<Link> links_;
  std::vector<int> adjacency_offsets_{0};
  std::vector<QpuId> adjacency_;
  std::vector<int> dist_;
  int level_ = 0;
};

bool is_connected(int n, std::span<const Link> links);

NetworkGraph make_linear(int n_qpus, int capacity);
NetworkGraph make_grid(int rows, int cols, int capacity);
NetworkGraph make_complete(int n_qpus, int capacity);
/// Erdos-Renyi G(n, p), resampled until connected.
NetworkGraph make_random(int n_qpus, double p, int capacity, std::uint64_t seed,
                         int max_retries = 1000);

/// Parses `linear:<N>`, `grid:<R>x<C>`, `random:<N>:<p>` or `complete:<N>`.
NetworkGraph parse_topology(const std::string& spec, int capacity,
                            std::uint64_t seed = 0);
/// Number of QPUs a topology spec describes, without building it.
int topology_size(const std::string& spec);

/// Contracts `base` onto `groups` (disjoint sets of `base` QPU ids). Group
/// capacities and members are unions; two groups are linked iff some base
/// link joins them.
NetworkGraph quotient(const NetworkGraph& base,
                      std::span<const std::vector<QpuId>> groups, int level);

}  // namespace qnetpart
