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

#include "qnetpart/network.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qnetpart {

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max();

std::vector<Qpu> uniform_qpus(int n, int capacity) {
  if (n < 1) throw std::invalid_argument("network needs at least one QPU");
  if (capacity < 0) throw std::invalid_argument("QPU capacity must be non-negative");
  std::vector<Qpu> qpus(n);
  for (int i = 0; i < n; ++i) qpus[i] = {capacity, {i}};
  return qpus;
}

int parse_int(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("bad topology spec '" + spec + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

}  // namespace

NetworkGraph::NetworkGraph(std::vector<Qpu> qpus, std::vector<Link> links,
                           int level)
    : qpus_(std::move(qpus)), level_(level) {
  const int n = size();
  if (n < 1) throw std::invalid_argument("network needs at least one QPU");
  for (Qpu& q : qpus_) {
    if (q.capacity < 0) throw std::invalid_argument("QPU capacity must be non-negative");
    std::sort(q.members.begin(), q.members.end());
  }
  for (auto [a, b] : links) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw std::invalid_argument("link references a missing QPU");
    }
    if (a == b) continue;
    links_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(links_.begin(), links_.end());
  links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
  if (!is_connected(n, links_)) throw std::invalid_argument("network is disconnected");

  std::vector<int> degree(n, 0);
  for (auto [a, b] : links_) {
    ++degree[a];
    ++degree[b];
  }
  adjacency_offsets_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) adjacency_offsets_[i + 1] = adjacency_offsets_[i] + degree[i];
  adjacency_.assign(adjacency_offsets_[n], 0);
  std::vector<int> fill(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
  for (auto [a, b] : links_) {
    adjacency_[fill[a]++] = b;
    adjacency_[fill[b]++] = a;
  }
  for (int i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + adjacency_offsets_[i],
              adjacency_.begin() + adjacency_offsets_[i + 1]);
  }

  dist_.assign(static_cast<std::size_t>(n) * n, kUnreachable);
  std::vector<QpuId> queue(n);
  for (int s = 0; s < n; ++s) {
    int* row = dist_.data() + static_cast<std::size_t>(s) * n;
    row[s] = 0;
    int head = 0;
    int tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const QpuId u = queue[head++];
      for (QpuId w : neighbors(u)) {
        if (row[w] == kUnreachable) {
          row[w] = row[u] + 1;
          queue[tail++] = w;
        }
      }
    }
  }
}

long NetworkGraph::total_capacity() const {
  long total = 0;
  for (const Qpu& q : qpus_) total += q.capacity;
  return total;
}

int NetworkGraph::diameter() const {
  return dist_.empty() ? 0 : *std::max_element(dist_.begin(), dist_.end());
}

std::uint64_t NetworkGraph::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  const auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xFF;
      h *= 1099511628211ULL;
    }
  };
  mix(qpus_.size());
  for (const Qpu& q : qpus_) mix(static_cast<std::uint64_t>(q.capacity));
  for (auto [a, b] : links_) {
    mix(static_cast<std::uint64_t>(a));
    mix(static_cast<std::uint64_t>(b));
  }
  return h;
}

std::string NetworkGraph::dump() const {
  std::ostringstream out;
  out << "network qpus=" << size() << " links=" << links_.size() << " level=" << level_ << "\n";
  for (int q = 0; q < size(); ++q) {
    out << "qpu " << q << " cap=" << qpus_[q].capacity << " members=";
    for (std::size_t i = 0; i < qpus_[q].members.size(); ++i) {
      out << (i ? "," : "") << qpus_[q].members[i];
    }
    out << " :";
    for (QpuId w : neighbors(q)) out << " " << w;
    out << "\n";
  }
  return out.str();
}

bool is_connected(int n, std::span<const Link> links) {
  if (n <= 1) return n == 1;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (auto [a, b] : links) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

NetworkGraph make_linear(int n_qpus, int capacity) {
  std::vector<Link> links;
  for (int i = 0; i + 1 < n_qpus; ++i) links.emplace_back(i, i + 1);
  return NetworkGraph(uniform_qpus(n_qpus, capacity), std::move(links));
}

NetworkGraph make_grid(int rows, int cols, int capacity) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be positive");
  std::vector<Link> links;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int id = r * cols + c;
      if (c + 1 < cols) links.emplace_back(id, id + 1);
      if (r + 1 < rows) links.emplace_back(id, id + cols);
    }
  }
  return NetworkGraph(uniform_qpus(rows * cols, capacity), std::move(links));
}

NetworkGraph make_complete(int n_qpus, int capacity) {
  std::vector<Link> links;
  for (int i = 0; i < n_qpus; ++i) {
    for (int j = i + 1; j < n_qpus; ++j) links.emplace_back(i, j);
  }
  return NetworkGraph(uniform_qpus(n_qpus, capacity), std::move(links));
}

NetworkGraph make_random(int n_qpus, double p, int capacity, std::uint64_t seed,
                         int max_retries) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in (0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Link> links;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    links.clear();
    for (int i = 0; i < n_qpus; ++i) {
      for (int j = i + 1; j < n_qpus; ++j) {
        if (coin(rng)) links.emplace_back(i, j);
      }
    }
    if (is_connected(n_qpus, links)) {
      return NetworkGraph(uniform_qpus(n_qpus, capacity), std::move(links));
    }
  }
  throw std::runtime_error("no connected random network after " +
                           std::to_string(max_retries) + " attempts (p too small)");
}

int topology_size(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() < 2) throw std::invalid_argument("bad topology spec '" + spec + "'");
  if (parts[0] == "grid") {
    const auto dims = split(parts[1], 'x');
    if (dims.size() != 2 || parts.size() != 2) {
      throw std::invalid_argument("bad topology spec '" + spec + "'");
    }
    return parse_int(dims[0], spec) * parse_int(dims[1], spec);
  }
  if (parts[0] == "linear" || parts[0] == "complete" || parts[0] == "random") {
    return parse_int(parts[1], spec);
  }
  throw std::invalid_argument("unknown topology '" + parts[0] + "'");
}

NetworkGraph parse_topology(const std::string& spec, int capacity, std::uint64_t seed) {
  const auto parts = split(spec, ':');
  const int n = topology_size(spec);
  if (parts[0] == "linear" && parts.size() == 2) return make_linear(n, capacity);
  if (parts[0] == "complete" && parts.size() == 2) return make_complete(n, capacity);
  if (parts[0] == "grid") {
    const auto dims = split(parts[1], 'x');
    return make_grid(parse_int(dims[0], spec), parse_int(dims[1], spec), capacity);
  }
  if (parts[0] == "random" && parts.size() == 3) {
    double p = 0.0;
    try {
      p = std::stod(parts[2]);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad topology spec '" + spec + "'");
    }
    return make_random(n, p, capacity, seed);
  }
  throw std::invalid_argument("bad topology spec '" + spec + "'");
}

NetworkGraph quotient(const NetworkGraph& base,
                      std::span<const std::vector<QpuId>> groups, int level) {
  std::vector<int> group_of(base.size(), -1);
  std::vector<Qpu> qpus(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) throw std::invalid_argument("empty QPU group");
    for (QpuId q : groups[g]) {
      if (q < 0 || q >= base.size() || group_of[q] >= 0) {
        throw std::invalid_argument("QPU groups must be disjoint base ids");
      }
      group_of[q] = static_cast<int>(g);
      qpus[g].capacity += base.capacity(q);
      const auto& m = base.members(q);
      qpus[g].members.insert(qpus[g].members.end(), m.begin(), m.end());
    }
  }
  std::vector<Link> links;
  for (auto [a, b] : base.links()) {
    const int ga = group_of[a];
    const int gb = group_of[b];
    if (ga >= 0 && gb >= 0 && ga != gb) links.emplace_back(ga, gb);
  }
  return NetworkGraph(std::move(qpus), std::move(links), level);
}

}  // namespace qnetpart
