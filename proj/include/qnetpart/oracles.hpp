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

#include <span>

#include "qnetpart/assignment.hpp"
#include "qnetpart/cost.hpp"
#include "qnetpart/hypergraph.hpp"
#include "qnetpart/network.hpp"

namespace qnetpart {

/// Smallest number of links connecting every receiver to the tree that
/// `root_tree` builds over `roots`, by enumerating link subsets in order of
/// size. Throws when the network has more than `max_links` links.
int brute_force_steiner_forest(const NetworkGraph& network, Mask roots, Mask receivers,
                               int max_links = 20);

struct OracleResult {
  Assignment assignment;
  long cost = 0;
};

/// Minimum-cost capacity-feasible assignment by depth-first enumeration with
/// bounding; among optima the lexicographically smallest assignment wins.
/// Locked nodes and dummies keep their QPU. Throws when more than
/// `max_nodes` nodes are free or nothing fits.
OracleResult brute_force_partition(const TemporalHypergraph& h, const CostEngine& engine,
                                   const Assignment& fixed, std::span<const QpuId> targets = {},
                                   int max_nodes = 14);
OracleResult brute_force_partition(const TemporalHypergraph& h, const CostEngine& engine,
                                   int max_nodes = 14);

}  // namespace qnetpart
