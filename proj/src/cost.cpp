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

#include "qnetpart/cost.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qnetpart {

namespace {

// Dense tables hold 4^N bytes; keep them within 16 MiB.
constexpr int kMaxDenseQpus = 12;

// Multi-source BFS from `sources` (enqueued in id order). Returns the first
// dequeued node in `targets` and fills `parent` for every visited node.
QpuId nearest_target(const NetworkGraph& net, Mask sources, Mask targets,
                     std::array<QpuId, kMaxQpus>& parent) {
  std::array<QpuId, kMaxQpus> queue{};
  Mask seen = sources;
  int head = 0;
  int tail = 0;
  for (Mask s = sources; s; s &= s - 1) {
    const QpuId q = std::countr_zero(s);
    parent[q] = -1;
    queue[tail++] = q;
  }
  while (head < tail) {
    const QpuId u = queue[head++];
    if (targets & qpu_bit(u)) return u;
    for (QpuId w : net.neighbors(u)) {
      if (seen & qpu_bit(w)) continue;
      seen |= qpu_bit(w);
      parent[w] = u;
      queue[tail++] = w;
    }
  }
  return -1;
}

// Adds the BFS path from `node` back to the source set; returns nodes added.
Mask trace_back(QpuId node, const std::array<QpuId, kMaxQpus>& parent,
                std::vector<Link>& edges) {
  Mask added = 0;
  while (parent[node] >= 0) {
    added |= qpu_bit(node);
    const QpuId up = parent[node];
    edges.emplace_back(std::min(node, up), std::max(node, up));
    node = up;
  }
  return added;
}

void check_size(const NetworkGraph& net) {
  if (net.size() > kMaxQpus) {
    throw std::invalid_argument("cost model supports at most 64 QPUs");
  }
}

}  // namespace

Tree root_tree(Mask roots, const NetworkGraph& network) {
  check_size(network);
  Tree tree;
  if (roots == 0) return tree;
  tree.nodes = qpu_bit(std::countr_zero(roots));
  std::array<QpuId, kMaxQpus> parent{};
  for (Mask pending = roots & ~tree.nodes; pending; pending &= ~tree.nodes) {
    const QpuId hit = nearest_target(network, tree.nodes, pending, parent);
    if (hit < 0) throw std::logic_error("root QPUs are disconnected");
    tree.nodes |= trace_back(hit, parent, tree.edges);
  }
  return tree;
}

Forest forest_from_tree(const Tree& tree, Mask receivers, const NetworkGraph& network) {
  check_size(network);
  Forest forest;
  Mask sources = tree.nodes;
  std::array<QpuId, kMaxQpus> parent{};
  for (Mask pending = receivers & ~sources; pending; pending &= ~sources) {
    const QpuId hit = nearest_target(network, sources, pending, parent);
    if (hit < 0) throw std::logic_error("receiver QPU is disconnected from the root tree");
    sources |= trace_back(hit, parent, forest.edges);
  }
  forest.cost = static_cast<int>(forest.edges.size());
  return forest;
}

Forest forest_cost(ConfigPair pair, const NetworkGraph& network) {
  if (pair.root == 0) {
    if (pair.rec != 0) throw std::invalid_argument("receivers without any root QPU");
    return {};
  }
  return forest_from_tree(root_tree(pair.root, network), pair.rec, network);
}

CostEngine::CostEngine(NetworkGraph network, int precompute_threshold)
    : network_(std::move(network)), threshold_(precompute_threshold) {
  check_size(network_);
  if (network_.size() <= std::min(threshold_, kMaxDenseQpus)) {
    precompute();
  } else {
    shards_ = std::make_unique<std::array<Shard, kShards>>();
  }
}

void CostEngine::precompute() {
  const int n = network_.size();
  const std::size_t width = std::size_t{1} << n;
  table_.assign(width * width, 0);
  for (Mask root = 1; root < width; ++root) {
    const Tree tree = root_tree(root, network_);
    std::uint8_t* row = table_.data() + root * width;
    for (Mask rec = 1; rec < width; ++rec) {
      const Mask outside = rec & ~tree.nodes;
      // Receivers on the tree are free; reuse the already filled subset.
      row[rec] = outside == rec
                     ? static_cast<std::uint8_t>(forest_from_tree(tree, rec, network_).cost)
                     : row[outside];
    }
  }
}

int CostEngine::compute(ConfigPair pair) const { return forest_cost(pair, network_).cost; }

int CostEngine::memo_cost(ConfigPair pair) const {
  Shard& shard = (*shards_)[PairHash()(pair) % kShards];
  {
    std::shared_lock lock(shard.mutex);
    if (auto it = shard.costs.find(pair); it != shard.costs.end()) return it->second;
  }
  const auto value = static_cast<std::uint8_t>(compute(pair));
  std::unique_lock lock(shard.mutex);
  shard.costs.try_emplace(pair, value);
  return value;
}

std::size_t CostEngine::memo_size() const {
  if (!shards_) return 0;
  std::size_t total = 0;
  for (const Shard& shard : *shards_) {
    std::shared_lock lock(shard.mutex);
    total += shard.costs.size();
  }
  return total;
}

namespace {
constexpr char kTableMagic[8] = {'Q', 'N', 'P', 'T', 'B', 'L', '1', '\0'};
}

void CostEngine::save_table(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write cost table '" + path + "'");
  const std::uint64_t fingerprint = network_.fingerprint();
  const std::uint32_t n = static_cast<std::uint32_t>(network_.size());
  const std::uint8_t dense_flag = dense() ? 1 : 0;
  out.write(kTableMagic, sizeof kTableMagic);
  out.write(reinterpret_cast<const char*>(&fingerprint), sizeof fingerprint);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&dense_flag), sizeof dense_flag);
  if (dense()) {
    out.write(reinterpret_cast<const char*>(table_.data()),
              static_cast<std::streamsize>(table_.size()));
    return;
  }
  std::vector<std::pair<ConfigPair, std::uint8_t>> entries;
  for (const Shard& shard : *shards_) {
    std::shared_lock lock(shard.mutex);
    entries.insert(entries.end(), shard.costs.begin(), shard.costs.end());
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.first.root != b.first.root ? a.first.root < b.first.root
                                        : a.first.rec < b.first.rec;
  });
  const std::uint64_t count = entries.size();
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  for (const auto& [pair, cost] : entries) {
    out.write(reinterpret_cast<const char*>(&pair.root), sizeof pair.root);
    out.write(reinterpret_cast<const char*>(&pair.rec), sizeof pair.rec);
    out.write(reinterpret_cast<const char*>(&cost), sizeof cost);
  }
}

bool CostEngine::load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read cost table '" + path + "'");
  char magic[8];
  std::uint64_t fingerprint = 0;
  std::uint32_t n = 0;
  std::uint8_t dense_flag = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&fingerprint), sizeof fingerprint);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&dense_flag), sizeof dense_flag);
  if (!in || std::memcmp(magic, kTableMagic, sizeof magic) != 0) {
    throw std::runtime_error("'" + path + "' is not a cost table");
  }
  if (fingerprint != network_.fingerprint() || n != static_cast<std::uint32_t>(network_.size()) ||
      (dense_flag != 0) != dense()) {
    return false;
  }
  if (dense()) {
    std::vector<std::uint8_t> table(table_.size());
    in.read(reinterpret_cast<char*>(table.data()), static_cast<std::streamsize>(table.size()));
    if (!in) throw std::runtime_error("truncated cost table '" + path + "'");
    table_ = std::move(table);
    return true;
  }
  std::uint64_t count = 0;
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  for (std::uint64_t i = 0; i < count; ++i) {
    ConfigPair pair;
    std::uint8_t cost = 0;
    in.read(reinterpret_cast<char*>(&pair.root), sizeof pair.root);
    in.read(reinterpret_cast<char*>(&pair.rec), sizeof pair.rec);
    in.read(reinterpret_cast<char*>(&cost), sizeof cost);
    if (!in) throw std::runtime_error("truncated cost table '" + path + "'");
    Shard& shard = (*shards_)[PairHash()(pair) % kShards];
    std::unique_lock lock(shard.mutex);
    shard.costs.insert_or_assign(pair, cost);
  }
  return true;
}

ConfigPair edge_config(const TemporalHypergraph& h, EdgeId edge, const Assignment& phi) {
  ConfigPair pair;
  for (const Pin& pin : h.pins(edge)) {
    const QpuId q = phi.qpu[pin.node];
    if (q == kUnassigned) {
      throw std::invalid_argument("node " + std::to_string(pin.node) + " is unassigned");
    }
    if (pin.role & Pin::kRoot) pair.root |= qpu_bit(q);
    if (pin.role & Pin::kRec) pair.rec |= qpu_bit(q);
  }
  return pair;
}

int edge_cost(const TemporalHypergraph& h, EdgeId edge, const Assignment& phi,
              const CostEngine& engine) {
  return engine.cost(edge_config(h, edge, phi));
}

long total_cost(const TemporalHypergraph& h, const Assignment& phi, const CostEngine& engine) {
  long total = 0;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    total += edge_cost(h, static_cast<EdgeId>(e), phi, engine);
  }
  return total;
}

long total_cost_uncached(const TemporalHypergraph& h, const Assignment& phi,
                         const NetworkGraph& network) {
  long total = 0;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    total += forest_cost(edge_config(h, static_cast<EdgeId>(e), phi), network).cost;
  }
  return total;
}

}  // namespace qnetpart
