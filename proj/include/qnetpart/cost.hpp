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

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "qnetpart/assignment.hpp"
#include "qnetpart/hypergraph.hpp"
#include "qnetpart/network.hpp"

namespace qnetpart {

using Mask = std::uint64_t;
inline constexpr int kMaxQpus = 64;

inline Mask qpu_bit(QpuId q) { return Mask{1} << q; }

/// QPUs hosting an edge's root nodes and receiver nodes.
struct ConfigPair {
  Mask root = 0;
  Mask rec = 0;
  friend bool operator==(const ConfigPair&, const ConfigPair&) = default;
};

/// Receivers outside the root set: the e-bit count on an all-to-all network.
inline int alltoall_cost(ConfigPair pair) {
  return std::popcount(pair.rec & ~pair.root);
}

struct Tree {
  Mask nodes = 0;
  std::vector<Link> edges;
};

/// Tree spanning the root QPUs. Starts at the lowest root and repeatedly
/// attaches the root closest to the tree along a BFS path (node-id order
/// breaks ties), which is the shortest path for two roots.
Tree root_tree(Mask roots, const NetworkGraph& network);

struct Forest {
  std::vector<Link> edges;
  int cost = 0;
};

/// Links connecting every receiver to the root tree, grown by multi-source
/// BFS from the tree. Each time the nearest unconnected receiver is
/// dequeued its BFS path is added and the path's nodes join the sources.
/// Tree links are not counted.
Forest forest_cost(ConfigPair pair, const NetworkGraph& network);
Forest forest_from_tree(const Tree& tree, Mask receivers, const NetworkGraph& network);

/// Memoized ConfigPair -> forest cost for one network. Small networks get a
/// dense precomputed table; larger ones fill a concurrent memo on demand.
/// All queries are safe from several threads.
class CostEngine {
 public:
  static constexpr int kDefaultPrecomputeThreshold = 10;

  explicit CostEngine(NetworkGraph network,
                      int precompute_threshold = kDefaultPrecomputeThreshold);

  CostEngine(const CostEngine&) = delete;
  CostEngine& operator=(const CostEngine&) = delete;

  const NetworkGraph& network() const { return network_; }
  bool dense() const { return !table_.empty(); }
  int precompute_threshold() const { return threshold_; }

  int cost(ConfigPair pair) const {
    if (dense()) {
      return table_[(static_cast<std::size_t>(pair.root) << network_.size()) | pair.rec];
    }
    return memo_cost(pair);
  }

  /// Computes the forest directly, bypassing the table.
  int compute(ConfigPair pair) const;

  std::size_t memo_size() const;

  /// Binary table dump keyed by the network fingerprint. `load_table`
  /// returns false when the file belongs to a different network.
  void save_table(const std::string& path) const;
  bool load_table(const std::string& path);

 private:
  int memo_cost(ConfigPair pair) const;
  void precompute();

  struct PairHash {
    std::size_t operator()(const ConfigPair& p) const {
      return std::hash<std::uint64_t>()(p.root * 0x9E3779B97F4A7C15ULL ^ p.rec);
    }
  };
  struct Shard {
    mutable std::shared_mutex mutex;
    std::unordered_map<ConfigPair, std::uint8_t, PairHash> costs;
  };
  static constexpr std::size_t kShards = 16;

  NetworkGraph network_;
  int threshold_;
  std::vector<std::uint8_t> table_;
  std::unique_ptr<std::array<Shard, kShards>> shards_;
};

/// Root/receiver QPU masks of `edge` under `phi`.
ConfigPair edge_config(const TemporalHypergraph& h, EdgeId edge, const Assignment& phi);

/// Forest cost of one edge. State-edges cost the hop distance between their
/// endpoints' QPUs. Throws when a pin is unassigned.
int edge_cost(const TemporalHypergraph& h, EdgeId edge, const Assignment& phi,
              const CostEngine& engine);

/// Sum of edge costs over every edge, including state-edges.
long total_cost(const TemporalHypergraph& h, const Assignment& phi,
                const CostEngine& engine);

/// Same objective, recomputing every forest from scratch.
long total_cost_uncached(const TemporalHypergraph& h, const Assignment& phi,
                         const NetworkGraph& network);

}  // namespace qnetpart
