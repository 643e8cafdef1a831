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
#include <vector>

#include "qnetpart/assignment.hpp"
#include "qnetpart/coarsening.hpp"
#include "qnetpart/hypergraph.hpp"
#include "qnetpart/multilevel.hpp"

namespace qnetpart {

/// Copy of `h` in which nodes with `rehome[v] == -1` stay live and every other
/// node merges into the dummy standing for QPU `rehome[v]`. One dummy is
/// created per entry of `dummy_qpus`, after the live nodes. Edges keep their
/// root/receiver roles; edges left without a live pin are dropped.
TemporalHypergraph cut_subgraph(const TemporalHypergraph& h, std::span<const QpuId> rehome,
                                std::span<const QpuId> dummy_qpus);

/// One copy per QPU i in [0, k): nodes on i stay live, nodes on j != i merge
/// into a dummy pinned to j.
std::vector<TemporalHypergraph> cut_hypergraph(const TemporalHypergraph& h,
                                               const Assignment& phi, int k);

struct RecursiveOptions {
  MultilevelOptions multilevel;
  int threads = 1;  // sibling sub-problems solved concurrently; 0 = all cores
  int precompute_threshold = CostEngine::kDefaultPrecomputeThreshold;
  bool level_costs = true;
};

struct RecursionLevel {
  int level = 0;  // network hierarchy level
  int subproblems = 0;
  long cost = -1;  // cost of the level-l placement on the level-l network
  double wall_ms = 0;
};

struct RecursiveResult {
  Assignment assignment;
  long cost = 0;
  std::vector<RecursionLevel> levels;  // coarsest first
};

/// Partitions over the coarsest network, then repeatedly expands each coarse
/// QPU, cuts the hypergraph around it and re-partitions until level 0, and
/// stitches the leaf placements together. `h` must be free of dummies.
RecursiveResult recursive_partition(const TemporalHypergraph& h,
                                    const CoarseningHierarchy& hierarchy,
                                    const RecursiveOptions& options = {});

}  // namespace qnetpart
