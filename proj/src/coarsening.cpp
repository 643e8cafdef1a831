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

#include "qnetpart/coarsening.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/maximum_weighted_matching.hpp>

namespace qnetpart {

namespace {

using WeightProperty = boost::property<boost::edge_weight_t, long>;
using MatchGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::no_property, WeightProperty>;

// Maximum matching weight over links whose endpoints are both active.
long max_matching_weight(int n, const std::vector<Link>& links,
                         const std::vector<long>& weights,
                         const std::vector<std::uint8_t>& active) {
  std::vector<int> local(n, -1);
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (active[i]) local[i] = count++;
  }
  MatchGraph graph(count);
  bool any = false;
  for (std::size_t e = 0; e < links.size(); ++e) {
    const auto [a, b] = links[e];
    if (local[a] >= 0 && local[b] >= 0) {
      boost::add_edge(local[a], local[b], WeightProperty(weights[e]), graph);
      any = true;
    }
  }
  if (!any) return 0;
  std::vector<boost::graph_traits<MatchGraph>::vertex_descriptor> mate(count);
  boost::maximum_weighted_matching(graph, mate.data());
  return boost::matching_weight_sum(graph, mate.data());
}

std::vector<Link> exact_matching(const NetworkGraph& g) {
  const auto& links = g.links();
  if (links.empty()) return {};
  // Offsetting every weight by more than the total |weight| makes any
  // maximum-weight matching a maximum-cardinality one.
  long spread = 1;
  for (auto [a, b] : links) spread -= merge_weight(g, a, b);
  std::vector<long> weights;
  weights.reserve(links.size());
  for (auto [a, b] : links) weights.push_back(spread + merge_weight(g, a, b));

  std::vector<std::uint8_t> active(g.size(), 1);
  long remaining = max_matching_weight(g.size(), links, weights, active);
  std::vector<Link> matching;
  // Fix links in lexicographic order whenever an optimum still contains them.
  for (std::size_t e = 0; e < links.size() && remaining > 0; ++e) {
    const auto [a, b] = links[e];
    if (!active[a] || !active[b]) continue;
    active[a] = active[b] = 0;
    if (weights[e] + max_matching_weight(g.size(), links, weights, active) == remaining) {
      matching.push_back(links[e]);
      remaining -= weights[e];
    } else {
      active[a] = active[b] = 1;
    }
  }
  return matching;
}

std::vector<Link> greedy_matching(const NetworkGraph& g) {
  std::vector<std::size_t> order(g.links().size());
  std::iota(order.begin(), order.end(), 0);
  const auto& links = g.links();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return merge_weight(g, links[x].first, links[x].second) >
           merge_weight(g, links[y].first, links[y].second);
  });
  std::vector<std::uint8_t> used(g.size(), 0);
  std::vector<Link> matching;
  for (std::size_t e : order) {
    const auto [a, b] = links[e];
    if (used[a] || used[b]) continue;
    used[a] = used[b] = 1;
    matching.push_back(links[e]);
  }
  std::sort(matching.begin(), matching.end());
  return matching;
}

}  // namespace

std::string to_string(MatchingMode mode) {
  return mode == MatchingMode::Exact ? "exact" : "greedy";
}

MatchingMode parse_matching_mode(const std::string& text) {
  if (text == "exact") return MatchingMode::Exact;
  if (text == "greedy") return MatchingMode::Greedy;
  throw std::invalid_argument("matching mode must be 'exact' or 'greedy'");
}

long merge_weight(const NetworkGraph& g, QpuId a, QpuId b) {
  const long diff = static_cast<long>(g.capacity(a)) - g.capacity(b);
  return -diff * diff;
}

std::vector<Link> compute_matching(const NetworkGraph& g, MatchingMode mode) {
  return mode == MatchingMode::Exact ? exact_matching(g) : greedy_matching(g);
}

NetworkCoarsening coarsen_network(const NetworkGraph& g, int n_max, MatchingMode mode) {
  if (n_max < 1) throw std::invalid_argument("target network size must be positive");
  NetworkCoarsening result{g, std::vector<QpuId>(g.size()), true};
  std::iota(result.merge_map.begin(), result.merge_map.end(), 0);
  if (g.size() <= n_max) return result;

  NetworkGraph current = g;
  while (current.size() > n_max) {
    const std::vector<Link> matching = compute_matching(current, mode);
    if (matching.empty()) {
      result.reached_target = false;
      break;
    }
    std::vector<int> parent(current.size());
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&parent](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int count = current.size();
    for (auto [a, b] : matching) {
      const int ra = find(a);
      const int rb = find(b);
      parent[std::max(ra, rb)] = std::min(ra, rb);
      if (--count == n_max) break;
    }
    // Groups are numbered by their smallest member.
    std::vector<std::vector<QpuId>> groups;
    std::vector<int> group_of(current.size(), -1);
    for (int q = 0; q < current.size(); ++q) {
      const int r = find(q);
      if (group_of[r] < 0) {
        group_of[r] = static_cast<int>(groups.size());
        groups.emplace_back();
      }
      group_of[q] = group_of[r];
      groups[group_of[q]].push_back(q);
    }
    current = quotient(current, groups, g.level() + 1);
    for (QpuId& image : result.merge_map) image = group_of[image];
  }
  result.graph = std::move(current);
  return result;
}

QpuId CoarseningHierarchy::image(QpuId q0, int level) const {
  QpuId q = q0;
  for (int l = 0; l < level; ++l) q = merge_maps.at(l).at(q);
  return q;
}

std::vector<QpuId> CoarseningHierarchy::constituents(int level, QpuId q) const {
  if (level < 1 || level >= num_levels()) {
    throw std::out_of_range("no finer level below level " + std::to_string(level));
  }
  std::vector<QpuId> out;
  const auto& map = merge_maps[level - 1];
  for (std::size_t p = 0; p < map.size(); ++p) {
    if (map[p] == q) out.push_back(static_cast<QpuId>(p));
  }
  return out;
}

CoarseningHierarchy coarsen_network_recursive(const NetworkGraph& g, int chi,
                                              MatchingMode mode) {
  if (chi < 2) throw std::invalid_argument("coarsening factor must be at least 2");
  CoarseningHierarchy hierarchy;
  hierarchy.chi = chi;
  hierarchy.mode = mode;
  hierarchy.levels.push_back(g);
  while (hierarchy.levels.back().size() > chi) {
    const NetworkGraph& current = hierarchy.levels.back();
    NetworkCoarsening step = coarsen_network(current, current.size() / chi, mode);
    if (step.graph.size() == current.size()) break;
    hierarchy.merge_maps.push_back(std::move(step.merge_map));
    hierarchy.levels.push_back(std::move(step.graph));
  }
  return hierarchy;
}

NetworkGraph expand_node(const NetworkGraph& coarse, const NetworkGraph& parent, QpuId v) {
  if (v < 0 || v >= coarse.size()) {
    throw std::invalid_argument("QPU " + std::to_string(v) + " not in the coarse network");
  }
  int finest = 0;
  for (const Qpu& q : coarse.qpus()) {
    for (QpuId m : q.members) finest = std::max(finest, m + 1);
  }
  std::vector<QpuId> coarse_of_member(finest, -1);
  for (QpuId c = 0; c < coarse.size(); ++c) {
    for (QpuId m : coarse.members(c)) coarse_of_member[m] = c;
  }
  std::vector<std::vector<QpuId>> inside(coarse.size());
  for (QpuId u = 0; u < parent.size(); ++u) {
    QpuId owner = -1;
    for (QpuId m : parent.members(u)) {
      const QpuId c = m < finest ? coarse_of_member[m] : -1;
      if (c < 0 || (owner >= 0 && c != owner)) {
        throw std::invalid_argument("parent network is not a refinement of the coarse network");
      }
      owner = c;
    }
    if (owner < 0) throw std::invalid_argument("parent QPU without members");
    inside[owner].push_back(u);
  }
  std::vector<std::vector<QpuId>> groups;
  for (QpuId u : inside[v]) groups.push_back({u});
  for (QpuId c = 0; c < coarse.size(); ++c) {
    if (c == v) continue;
    if (inside[c].empty()) {
      throw std::invalid_argument("coarse QPU with no parent-level constituents");
    }
    groups.push_back(inside[c]);
  }
  return quotient(parent, groups, coarse.level());
}

}  // namespace qnetpart
