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
#include "qnetpart/cost.hpp"
#include "qnetpart/fm.hpp"
#include "qnetpart/hypergraph.hpp"

namespace qnetpart {

struct MultilevelOptions {
  FmOptions fm;
  /// Skip temporal coarsening and refine the input hypergraph only.
  bool temporal_coarsening = true;
};

struct LevelTrace {
  int level = 0;
  int slots = 0;
  long projected_cost = 0;  // cost on entry to this level
  long refined_cost = 0;    // cost after FM at this level
};

struct PartitionResult {
  Assignment assignment;
  long cost = 0;
  std::vector<LevelTrace> trace;  // coarsest level first
  FmStats fm_stats;
};

/// Temporally coarsens `h` down to one slot, places the coarsest level with
/// `initial_assignment` (falling back to the next finer level when the
/// block layout does not fit) and refines with FM while projecting back to
/// the input level.
PartitionResult multilevel_partition(const TemporalHypergraph& h, const CostEngine& engine,
                                     std::span<const QpuId> targets = {},
                                     const MultilevelOptions& options = {});

}  // namespace qnetpart
