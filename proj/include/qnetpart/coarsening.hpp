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

#include <string>
#include <vector>

#include "qnetpart/network.hpp"

namespace qnetpart {

enum class MatchingMode { Exact, Greedy };

std::string to_string(MatchingMode mode);
MatchingMode parse_matching_mode(const std::string& text);

/// Weight of contracting link (a, b): -(cap_a - cap_b)^2.
long merge_weight(const NetworkGraph& g, QpuId a, QpuId b);

/// Matching used to contract the network.
///
/// Exact mode returns a maximum-cardinality matching of maximum total
/// `merge_weight`, and among those the one whose sorted edge list is
/// lexicographically smallest. Greedy mode scans links by descending weight
/// (then lexicographically) and keeps every link whose endpoints are free.
std::vector<Link> compute_matching(const NetworkGraph& g,
                                   MatchingMode mode = MatchingMode::Exact);

struct NetworkCoarsening {
  NetworkGraph graph;
  std::vector<QpuId> merge_map;  // input QPU -> QPU of `graph`
  bool reached_target = true;
};

/// Contracts matched links one at a time until the graph has `n_max` QPUs,
/// recomputing the matching whenever one is exhausted. Stops early (with
/// `reached_target == false`) when no link is left to contract.
NetworkCoarsening coarsen_network(const NetworkGraph& g, int n_max,
                                  MatchingMode mode = MatchingMode::Exact);

struct CoarseningHierarchy {
  std::vector<NetworkGraph> levels;            // levels[0] is the input
  std::vector<std::vector<QpuId>> merge_maps;  // level l -> level l + 1
  int chi = 2;
  MatchingMode mode = MatchingMode::Exact;

  int num_levels() const { return static_cast<int>(levels.size()); }
  const NetworkGraph& coarsest() const { return levels.back(); }
  /// Image of a level-0 QPU at `level`.
  QpuId image(QpuId q0, int level) const;
  /// QPUs of level `level - 1` that merge into `q` at `level`.
  std::vector<QpuId> constituents(int level, QpuId q) const;
};

/// Repeatedly coarsens to floor(N / chi) QPUs until at most chi remain.
CoarseningHierarchy coarsen_network_recursive(
    const NetworkGraph& g, int chi, MatchingMode mode = MatchingMode::Exact);

/// Replaces coarse QPU `v` by its constituents in `parent` (the next finer
/// level). Constituents come first, in parent id order, followed by the
/// remaining coarse QPUs in id order. A constituent links to its parent-level
/// neighbours inside `v` and to every coarse QPU holding an outside
/// neighbour.
NetworkGraph expand_node(const NetworkGraph& coarse, const NetworkGraph& parent,
                         QpuId v);

}  // namespace qnetpart
