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

#include "qnetpart/recursive.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace qnetpart {

TemporalHypergraph cut_subgraph(const TemporalHypergraph& h, std::span<const QpuId> rehome,
                                std::span<const QpuId> dummy_qpus) {
  if (rehome.size() != h.num_nodes()) {
    throw std::invalid_argument("rehome map does not match the hypergraph");
  }
  TemporalHypergraph sub(h.num_qubits(), h.depth(), h.slots(), h.level());
  std::vector<NodeId> new_id(h.num_nodes(), -1);
  std::vector<NodeId> origin;
  for (std::size_t v = 0; v < h.num_nodes(); ++v) {
    if (rehome[v] != -1) continue;
    const NodeId id = static_cast<NodeId>(v);
    if (h.node(id).is_dummy) throw std::invalid_argument("dummy nodes cannot stay live");
    new_id[v] = sub.add_node(h.node(id), h.covers(id));
    origin.push_back(h.origin_of(id));
  }
  std::map<QpuId, NodeId> dummy_of;
  for (QpuId q : dummy_qpus) {
    if (dummy_of.count(q)) throw std::invalid_argument("duplicate dummy QPU");
    dummy_of[q] = sub.add_dummy(q);
    origin.push_back(-1);
  }
  for (std::size_t v = 0; v < h.num_nodes(); ++v) {
    if (rehome[v] == -1) continue;
    const auto it = dummy_of.find(rehome[v]);
    if (it == dummy_of.end()) {
      throw std::invalid_argument("node " + std::to_string(v) + " rehomed to QPU " +
                                  std::to_string(rehome[v]) + " without a dummy");
    }
    new_id[v] = it->second;
  }

  const auto remap = [&new_id](const std::vector<NodeId>& ids) {
    std::vector<NodeId> out;
    out.reserve(ids.size());
    for (NodeId v : ids) out.push_back(new_id[v]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  for (const HEdge& e : h.edges()) {
    HEdge edge;
    edge.kind = e.kind;
    edge.gate_count = e.gate_count;
    edge.root = remap(e.root);
    edge.rec = remap(e.rec);
    edge.final_root = e.final_root >= 0 ? new_id[e.final_root] : -1;
    const auto live = [&sub](NodeId v) { return !sub.node(v).is_dummy; };
    if (std::none_of(edge.root.begin(), edge.root.end(), live) &&
        std::none_of(edge.rec.begin(), edge.rec.end(), live)) {
      continue;
    }
    sub.add_edge(std::move(edge));
  }
  sub.set_origin(std::move(origin));
  sub.finalize();
  return sub;
}

std::vector<TemporalHypergraph> cut_hypergraph(const TemporalHypergraph& h,
                                               const Assignment& phi, int k) {
  if (phi.size() != h.num_nodes()) {
    throw std::invalid_argument("assignment size does not match the hypergraph");
  }
  for (std::size_t v = 0; v < h.num_nodes(); ++v) {
    if (phi.qpu[v] < 0 || phi.qpu[v] >= k) {
      throw std::invalid_argument("node " + std::to_string(v) + " is outside the " +
                                  std::to_string(k) + " coarse QPUs");
    }
  }
  std::vector<TemporalHypergraph> out;
  for (QpuId i = 0; i < k; ++i) {
    std::vector<QpuId> rehome(h.num_nodes());
    for (std::size_t v = 0; v < h.num_nodes(); ++v) {
      const bool keep = phi.qpu[v] == i && !h.node(static_cast<NodeId>(v)).is_dummy;
      rehome[v] = keep ? -1 : phi.qpu[v];
    }
    std::vector<QpuId> dummies;
    for (QpuId j = 0; j < k; ++j) {
      if (j != i) dummies.push_back(j);
    }
    out.push_back(cut_subgraph(h, rehome, dummies));
  }
  return out;
}

namespace {

struct SubProblem {
  TemporalHypergraph h;
  NetworkGraph net;
  int level = 0;
  std::vector<QpuId> active;  // level ids of QPUs 0..active.size()-1 of `net`
};

struct Solved {
  Assignment phi;
  std::vector<SubProblem> children;
};

std::vector<SubProblem> expand(const SubProblem& p, const Assignment& phi,
                               const CoarseningHierarchy& hierarchy) {
  const int num_active = static_cast<int>(p.active.size());
  const NetworkGraph& finer = hierarchy.levels[p.level - 1];
  std::vector<SubProblem> children;
  for (QpuId a = 0; a < num_active; ++a) {
    bool any = false;
    for (std::size_t v = 0; v < p.h.num_nodes() && !any; ++v) {
      any = !p.h.node(static_cast<NodeId>(v)).is_dummy && phi.qpu[v] == a;
    }
    if (!any) continue;

    // Prior dummies join the first sibling they link to directly.
    std::vector<QpuId> host(p.net.size(), -1);
    for (QpuId d = num_active; d < p.net.size(); ++d) {
      for (QpuId s = 0; s < num_active; ++s) {
        if (s != a && p.net.has_link(d, s)) {
          host[d] = s;
          break;
        }
      }
    }
    const std::vector<QpuId> parts = hierarchy.constituents(p.level, p.active[a]);
    std::vector<std::vector<QpuId>> groups;
    for (QpuId c : parts) groups.push_back(finer.members(c));
    std::vector<QpuId> group_of(p.net.size(), -1);
    for (QpuId s = 0; s < num_active; ++s) {
      if (s == a) continue;
      group_of[s] = static_cast<QpuId>(groups.size());
      groups.push_back(p.net.members(s));
    }
    for (QpuId d = num_active; d < p.net.size(); ++d) {
      if (host[d] >= 0) {
        group_of[d] = group_of[host[d]];
        auto& g = groups[group_of[d]];
        g.insert(g.end(), p.net.members(d).begin(), p.net.members(d).end());
      } else {
        group_of[d] = static_cast<QpuId>(groups.size());
        groups.push_back(p.net.members(d));
      }
    }

    std::vector<QpuId> rehome(p.h.num_nodes());
    for (std::size_t v = 0; v < p.h.num_nodes(); ++v) {
      const QpuId q = phi.qpu[v];
      rehome[v] = q == a && !p.h.node(static_cast<NodeId>(v)).is_dummy ? -1 : group_of[q];
    }
    std::vector<QpuId> dummies(groups.size() - parts.size());
    std::iota(dummies.begin(), dummies.end(), static_cast<QpuId>(parts.size()));

    SubProblem child;
    child.h = cut_subgraph(p.h, rehome, dummies);
    child.net = quotient(hierarchy.levels[0], groups, p.level - 1);
    child.level = p.level - 1;
    child.active = parts;
    children.push_back(std::move(child));
  }
  return children;
}

template <typename Fn>
void run_all(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, threads > 0 ? threads
                                               : std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

RecursiveResult recursive_partition(const TemporalHypergraph& h,
                                    const CoarseningHierarchy& hierarchy,
                                    const RecursiveOptions& options) {
  for (const HNode& node : h.nodes()) {
    if (node.is_dummy) throw std::invalid_argument("input hypergraph contains dummy nodes");
  }
  if (hierarchy.levels.empty()) throw std::invalid_argument("empty network hierarchy");

  const NetworkGraph& base = hierarchy.levels[0];
  std::vector<SubProblem> current(1);
  current[0].h = h;
  current[0].net = hierarchy.coarsest();
  current[0].level = hierarchy.num_levels() - 1;
  current[0].active.resize(current[0].net.size());
  std::iota(current[0].active.begin(), current[0].active.end(), 0);

  RecursiveResult result;
  Assignment stitched(h.num_nodes());
  std::vector<std::uint8_t> seen(h.num_nodes(), 0);

  while (!current.empty()) {
    const auto start = std::chrono::steady_clock::now();
    const int level = current[0].level;
    std::vector<Solved> solved(current.size());
    run_all(current.size(), options.threads, [&](std::size_t i) {
      const SubProblem& p = current[i];
      const CostEngine engine(p.net, options.precompute_threshold);
      std::vector<QpuId> targets(p.active.size());
      std::iota(targets.begin(), targets.end(), 0);
      solved[i].phi = multilevel_partition(p.h, engine, targets, options.multilevel).assignment;
      if (p.level > 0) solved[i].children = expand(p, solved[i].phi, hierarchy);
    });

    RecursionLevel report;
    report.level = level;
    report.subproblems = static_cast<int>(current.size());
    Assignment placed(h.num_nodes());
    for (std::size_t i = 0; i < current.size(); ++i) {
      const SubProblem& p = current[i];
      for (std::size_t v = 0; v < p.h.num_nodes(); ++v) {
        const NodeId id = static_cast<NodeId>(v);
        if (p.h.node(id).is_dummy) continue;
        const NodeId o = p.h.origin_of(id);
        if (placed.qpu[o] != kUnassigned) {
          throw std::logic_error("node " + std::to_string(o) + " placed twice at level " +
                                 std::to_string(level));
        }
        placed.qpu[o] = p.active[solved[i].phi.qpu[v]];
      }
    }
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (options.level_costs || level == 0) {
      if (!placed.complete()) {
        throw std::logic_error("some nodes were never placed at level " + std::to_string(level));
      }
      const CostEngine engine(hierarchy.levels[level], options.precompute_threshold);
      report.cost = total_cost(h, placed, engine);
    }
    if (level == 0) {
      for (std::size_t v = 0; v < h.num_nodes(); ++v) {
        if (seen[v]++) throw std::logic_error("node " + std::to_string(v) + " stitched twice");
        stitched.qpu[v] = placed.qpu[v];
      }
    }
    result.levels.push_back(report);

    std::vector<SubProblem> next;
    for (Solved& s : solved) {
      for (SubProblem& c : s.children) next.push_back(std::move(c));
    }
    current = std::move(next);
  }

  if (!stitched.complete()) throw std::logic_error("stitched assignment is not total");
  check_feasible(h, stitched, base);
  result.assignment = std::move(stitched);
  result.cost = result.levels.back().cost;
  return result;
}

}  // namespace qnetpart
