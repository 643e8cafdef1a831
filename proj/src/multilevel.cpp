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

#include "qnetpart/multilevel.hpp"

#include <optional>
#include <stdexcept>

namespace qnetpart {

PartitionResult multilevel_partition(const TemporalHypergraph& h, const CostEngine& engine,
                                     std::span<const QpuId> targets,
                                     const MultilevelOptions& options) {
  std::vector<TemporalHypergraph> levels;
  levels.push_back(h);
  if (options.temporal_coarsening) {
    while (levels.back().slots() > 1) levels.push_back(coarsen_temporal(levels.back()));
  }

  PartitionResult result;
  std::optional<Assignment> phi;
  int start = static_cast<int>(levels.size()) - 1;
  for (; start >= 0; --start) {
    try {
      phi = initial_assignment(levels[start], engine.network(), targets);
      break;
    } catch (const std::invalid_argument&) {
      if (start == 0) throw;
    }
  }

  for (int l = start; l >= 0; --l) {
    const TemporalHypergraph& level = levels[l];
    if (l != start) phi = project_assignment(*phi, levels[l + 1], level);
    LevelTrace trace;
    trace.level = l;
    trace.slots = level.slots();
    trace.projected_cost = total_cost(level, *phi, engine);
    trace.refined_cost = fm_refine(level, *phi, engine, targets, options.fm, &result.fm_stats);
    result.trace.push_back(trace);
  }
  result.cost = result.trace.back().refined_cost;
  result.assignment = std::move(*phi);
  return result;
}

}  // namespace qnetpart
