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

#include "qnetpart/assignment.hpp"
#include "qnetpart/cost.hpp"
#include "qnetpart/hypergraph.hpp"

namespace qnetpart {

struct FmOptions {
  int max_passes = 10;
  /// Random (node, target) gain checks against a full recomputation per pass.
  int audit_points = 0;
  std::uint64_t audit_seed = 0;
  /// When the best move targets a full QPU, follow it by the best move out
  /// of that QPU in the same time slot. Without this, such moves are skipped.
  bool allow_exchange = true;
};

struct FmStats {
  int passes = 0;
  long moves = 0;      // moves kept after rollback
  long exchanges = 0;  // repair moves among them
  long audits = 0;
  long audit_mismatches = 0;
};

/// One FM pass over `phi` (which must be feasible). Live, unlocked nodes may
/// move to QPUs in `targets` (all QPUs when empty). Returns the cost
/// decrease, which is never negative; `phi` holds the best prefix.
long fm_pass(const TemporalHypergraph& h, Assignment& phi, const CostEngine& engine,
             std::span<const QpuId> targets = {}, const FmOptions& options = {},
             FmStats* stats = nullptr);

/// Passes until one yields no improvement or `max_passes` is reached.
/// Returns the final total cost.
long fm_refine(const TemporalHypergraph& h, Assignment& phi, const CostEngine& engine,
               std::span<const QpuId> targets = {}, const FmOptions& options = {},
               FmStats* stats = nullptr);

/// cost(phi) - cost(phi with v moved to `target`).
long move_gain(const TemporalHypergraph& h, NodeId v, QpuId target, const Assignment& phi,
               const CostEngine& engine);

/// Change of u's gain toward `u_target` caused by moving v to `v_target`,
/// summed over the edges u and v share.
int gain_delta(const TemporalHypergraph& h, NodeId u, QpuId u_target, NodeId v,
               QpuId v_target, const Assignment& phi, const CostEngine& engine);

}  // namespace qnetpart
