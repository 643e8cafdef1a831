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

#include "qnetpart/fm.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace qnetpart {

namespace {

// Per-target bucket lists of (node, target) entries keyed by gain.
class GainBuckets {
 public:
  GainBuckets(std::size_t num_nodes, int num_qpus, int bound)
      : n_qpus_(num_qpus), bound_(bound),
        heads_(static_cast<std::size_t>(num_qpus) * (2 * bound + 1), -1),
        next_(num_nodes * num_qpus, -1), prev_(num_nodes * num_qpus, -1),
        key_(num_nodes * num_qpus, 0), present_(num_nodes * num_qpus, 0),
        top_(num_qpus, -1) {}

  bool contains(std::size_t idx) const { return present_[idx] != 0; }

  void insert(std::size_t idx, int gain) {
    const int k = static_cast<int>(idx % n_qpus_);
    const int slot = gain + bound_;
    int& head = heads_[bucket(k, slot)];
    next_[idx] = head;
    prev_[idx] = -1;
    if (head >= 0) prev_[head] = static_cast<int>(idx);
    head = static_cast<int>(idx);
    key_[idx] = slot;
    present_[idx] = 1;
    top_[k] = std::max(top_[k], slot);
  }

  void remove(std::size_t idx) {
    if (!present_[idx]) return;
    const int k = static_cast<int>(idx % n_qpus_);
    if (prev_[idx] >= 0) {
      next_[prev_[idx]] = next_[idx];
    } else {
      heads_[bucket(k, key_[idx])] = next_[idx];
    }
    if (next_[idx] >= 0) prev_[next_[idx]] = prev_[idx];
    present_[idx] = 0;
  }

  /// Highest-gain entry; ties go to the smallest target.
  int best() {
    int found = -1;
    int found_slot = -1;
    for (int k = 0; k < n_qpus_; ++k) {
      while (top_[k] >= 0 && heads_[bucket(k, top_[k])] < 0) --top_[k];
      if (top_[k] > found_slot) {
        found_slot = top_[k];
        found = heads_[bucket(k, top_[k])];
      }
    }
    return found;
  }

 private:
  std::size_t bucket(int k, int slot) const {
    return static_cast<std::size_t>(k) * (2 * bound_ + 1) + slot;
  }

  int n_qpus_;
  int bound_;
  std::vector<int> heads_;
  std::vector<int> next_;
  std::vector<int> prev_;
  std::vector<int> key_;
  std::vector<std::uint8_t> present_;
  std::vector<int> top_;
};

class Refiner {
 public:
  Refiner(const TemporalHypergraph& h, Assignment& phi, const CostEngine& engine,
          std::span<const QpuId> targets, const FmOptions& options, FmStats* stats)
      : h_(h), phi_(phi), engine_(engine), net_(engine.network()), n_(net_.size()),
        options_(options), stats_(stats), loads_(h, phi, n_), rng_(options.audit_seed) {
    if (phi.size() != h.num_nodes()) {
      throw std::invalid_argument("assignment size does not match the hypergraph");
    }
    check_feasible(h, phi, net_);
    is_target_.assign(n_, targets.empty() ? 1 : 0);
    for (QpuId q : targets) {
      if (q < 0 || q >= n_) throw std::invalid_argument("FM target QPU out of range");
      is_target_[q] = 1;
    }
    for (QpuId q = 0; q < n_; ++q) {
      if (is_target_[q]) targets_.push_back(q);
    }
    movable_.assign(h.num_nodes(), 0);
    for (std::size_t v = 0; v < h.num_nodes(); ++v) {
      const QpuId q = phi.qpu[v];
      movable_[v] = !h.node(static_cast<NodeId>(v)).is_dummy && !phi.is_locked(v) &&
                    is_target_[q] && targets_.size() > 1;
      if (movable_[v]) movable_list_.push_back(static_cast<NodeId>(v));
    }
    bound_ = static_cast<int>(std::max<std::size_t>(h.max_degree(), 1)) * std::max(n_ - 1, 1);
  }

  long pass() {
    init_state();
    const long start = cost_;
    GainBuckets buckets(h_.num_nodes(), n_, bound_);
    for (NodeId v : movable_list_) {
      for (QpuId k : targets_) {
        if (k != phi_.qpu[v]) buckets.insert(index(v, k), gain_[index(v, k)]);
      }
    }
    moved_.assign(h_.num_nodes(), 0);
    struct Step {
      NodeId node;
      QpuId from;
      bool repair;
    };
    std::vector<Step> log;
    long best = cost_;
    std::size_t best_len = 0;
    const int per_step = options_.audit_points > 0 && !movable_list_.empty()
                             ? std::max<int>(1, options_.audit_points /
                                                    static_cast<int>(movable_list_.size()))
                             : 0;
    int audits_left = options_.audit_points;

    for (;;) {
      const int pick = buckets.best();
      if (pick < 0) break;
      const NodeId v = pick / n_;
      const QpuId k = pick % n_;
      const QpuId from = phi_.qpu[v];
      if (loads_.fits(h_, v, k, net_.capacity(k))) {
        take(buckets, v);
        apply(v, k, buckets);
        log.push_back({v, from, false});
      } else if (options_.allow_exchange && has_repair(v, k)) {
        take(buckets, v);
        apply(v, k, buckets);
        log.push_back({v, from, false});
        const auto [u, q] = best_repair(v, k);
        take(buckets, u);
        const QpuId u_from = phi_.qpu[u];
        apply(u, q, buckets);
        log.push_back({u, u_from, true});
      } else {
        buckets.remove(pick);
        continue;
      }
      if (cost_ < best) {
        best = cost_;
        best_len = log.size();
      }
      for (int i = 0; i < per_step && audits_left > 0; ++i, --audits_left) audit();
    }

    for (std::size_t i = log.size(); i > best_len; --i) {
      const Step& s = log[i - 1];
      loads_.add(h_, s.node, phi_.qpu[s.node], -1);
      loads_.add(h_, s.node, s.from, +1);
      phi_.qpu[s.node] = s.from;
    }
    if (stats_) {
      ++stats_->passes;
      stats_->moves += static_cast<long>(best_len);
      for (std::size_t i = 0; i < best_len; ++i) stats_->exchanges += log[i].repair;
    }
    return start - best;
  }

  long cost() const { return cost_; }

  void init_state() {
    const std::size_t m = h_.num_edges();
    root_cnt_.assign(m * n_, 0);
    rec_cnt_.assign(m * n_, 0);
    root_mask_.assign(m, 0);
    rec_mask_.assign(m, 0);
    ecost_.assign(m, 0);
    cost_ = 0;
    for (std::size_t e = 0; e < m; ++e) {
      for (const Pin& pin : h_.pins(static_cast<EdgeId>(e))) {
        add_pin(e, pin.role, phi_.qpu[pin.node], +1);
      }
      ecost_[e] = engine_.cost({root_mask_[e], rec_mask_[e]});
      cost_ += ecost_[e];
    }
    gain_.assign(h_.num_nodes() * n_, 0);
    pending_.assign(h_.num_nodes() * n_, 0);
    for (NodeId v : movable_list_) recompute_gains(v);
  }

 private:
  std::size_t index(NodeId v, QpuId k) const {
    return static_cast<std::size_t>(v) * n_ + k;
  }

  void add_pin(std::size_t e, std::uint8_t role, QpuId q, int delta) {
    const std::size_t i = e * n_ + q;
    if (role & Pin::kRoot) {
      root_cnt_[i] += delta;
      root_mask_[e] = root_cnt_[i] ? root_mask_[e] | qpu_bit(q) : root_mask_[e] & ~qpu_bit(q);
    }
    if (role & Pin::kRec) {
      rec_cnt_[i] += delta;
      rec_mask_[e] = rec_cnt_[i] ? rec_mask_[e] | qpu_bit(q) : rec_mask_[e] & ~qpu_bit(q);
    }
  }

  // Edge configuration with one pin of `role` moved from `a` to `b`.
  ConfigPair moved(std::size_t e, std::uint8_t role, QpuId a, QpuId b) const {
    ConfigPair pair{root_mask_[e], rec_mask_[e]};
    if (role & Pin::kRoot) {
      if (root_cnt_[e * n_ + a] == 1) pair.root &= ~qpu_bit(a);
      pair.root |= qpu_bit(b);
    }
    if (role & Pin::kRec) {
      if (rec_cnt_[e * n_ + a] == 1) pair.rec &= ~qpu_bit(a);
      pair.rec |= qpu_bit(b);
    }
    return pair;
  }

  void recompute_gains(NodeId v) {
    const QpuId a = phi_.qpu[v];
    for (QpuId k : targets_) {
      int g = 0;
      if (k != a) {
        for (const Incidence& inc : h_.incident(v)) {
          g += ecost_[inc.edge] - engine_.cost(moved(inc.edge, inc.role, a, k));
        }
      }
      gain_[index(v, k)] = g;
    }
  }

  void take(GainBuckets& buckets, NodeId v) {
    moved_[v] = 1;
    for (QpuId k : targets_) buckets.remove(index(v, k));
  }

  void apply(NodeId v, QpuId b, GainBuckets& buckets) {
    const QpuId a = phi_.qpu[v];
    cost_ -= gain_[index(v, b)];
    touched_.clear();
    for (const Incidence& inc : h_.incident(v)) {
      const std::size_t e = inc.edge;
      const auto pins = h_.pins(inc.edge);
      before_.clear();
      for (const Pin& pin : pins) {
        if (pin.node == v || !movable_[pin.node]) continue;
        const QpuId at = phi_.qpu[pin.node];
        for (QpuId k : targets_) {
          before_.push_back(k == at ? 0 : engine_.cost(moved(e, pin.role, at, k)));
        }
      }
      const int old_cost = ecost_[e];
      add_pin(e, inc.role, a, -1);
      add_pin(e, inc.role, b, +1);
      ecost_[e] = engine_.cost({root_mask_[e], rec_mask_[e]});
      std::size_t i = 0;
      for (const Pin& pin : pins) {
        if (pin.node == v || !movable_[pin.node]) continue;
        const QpuId at = phi_.qpu[pin.node];
        for (QpuId k : targets_) {
          const int before_tilde = before_[i++];
          if (k == at) continue;
          const int after_tilde = engine_.cost(moved(e, pin.role, at, k));
          const int delta = ecost_[e] - after_tilde - old_cost + before_tilde;
          if (delta == 0) continue;
          const std::size_t idx = index(pin.node, k);
          if (pending_[idx] == 0) touched_.push_back(idx);
          pending_[idx] += delta;
        }
      }
    }
    loads_.add(h_, v, a, -1);
    loads_.add(h_, v, b, +1);
    phi_.qpu[v] = b;
    recompute_gains(v);
    for (std::size_t idx : touched_) {
      const int delta = pending_[idx];
      pending_[idx] = 0;
      if (delta == 0) continue;
      gain_[idx] += delta;
      if (buckets.contains(idx)) {
        buckets.remove(idx);
        buckets.insert(idx, gain_[idx]);
      }
    }
  }

  // Nodes sharing a time slot with v that could leave `k` after v lands there.
  template <typename Visit>
  void for_each_repair(NodeId v, QpuId k, Visit&& visit) {
    const QpuId a = phi_.qpu[v];
    loads_.add(h_, v, a, -1);
    loads_.add(h_, v, k, +1);
    for (NodeId u : h_.slot_nodes(h_.node(v).slot)) {
      if (u == v || moved_[u] || !movable_[u] || phi_.qpu[u] != k) continue;
      loads_.add(h_, u, k, -1);
      bool relieved = true;
      for (int t : h_.covers(v)) relieved &= loads_.load(k, t) <= net_.capacity(k);
      if (relieved) {
        for (QpuId q : targets_) {
          if (q != k && loads_.fits(h_, u, q, net_.capacity(q))) visit(u, q);
        }
      }
      loads_.add(h_, u, k, +1);
    }
    loads_.add(h_, v, k, -1);
    loads_.add(h_, v, a, +1);
  }

  bool has_repair(NodeId v, QpuId k) {
    bool any = false;
    for_each_repair(v, k, [&any](NodeId, QpuId) { any = true; });
    return any;
  }

  // Called after v has moved onto k; loads already include v on k.
  std::pair<NodeId, QpuId> best_repair(NodeId v, QpuId k) {
    NodeId best_u = -1;
    QpuId best_q = -1;
    int best_gain = 0;
    for (NodeId u : h_.slot_nodes(h_.node(v).slot)) {
      if (u == v || moved_[u] || !movable_[u] || phi_.qpu[u] != k) continue;
      loads_.add(h_, u, k, -1);
      bool relieved = true;
      for (int t : h_.covers(v)) relieved &= loads_.load(k, t) <= net_.capacity(k);
      if (relieved) {
        for (QpuId q : targets_) {
          if (q == k || !loads_.fits(h_, u, q, net_.capacity(q))) continue;
          const int g = gain_[index(u, q)];
          if (best_u < 0 || g > best_gain) {
            best_u = u;
            best_q = q;
            best_gain = g;
          }
        }
      }
      loads_.add(h_, u, k, +1);
    }
    if (best_u < 0) throw std::logic_error("exchange lost its repair move");
    return {best_u, best_q};
  }

  void audit() {
    const NodeId u = movable_list_[std::uniform_int_distribution<std::size_t>(
        0, movable_list_.size() - 1)(rng_)];
    const QpuId k = targets_[std::uniform_int_distribution<std::size_t>(
        0, targets_.size() - 1)(rng_)];
    if (k == phi_.qpu[u]) return;
    const long base = total_cost(h_, phi_, engine_);
    Assignment probe = phi_;
    probe.qpu[u] = k;
    const long expected = base - total_cost(h_, probe, engine_);
    if (stats_) {
      ++stats_->audits;
      if (expected != gain_[index(u, k)] || base != cost_) ++stats_->audit_mismatches;
    }
  }

  const TemporalHypergraph& h_;
  Assignment& phi_;
  const CostEngine& engine_;
  const NetworkGraph& net_;
  int n_;
  FmOptions options_;
  FmStats* stats_;
  LoadTable loads_;
  std::mt19937_64 rng_;
  std::vector<std::uint8_t> is_target_;
  std::vector<QpuId> targets_;
  std::vector<std::uint8_t> movable_;
  std::vector<NodeId> movable_list_;
  int bound_ = 1;

  std::vector<int> root_cnt_;
  std::vector<int> rec_cnt_;
  std::vector<Mask> root_mask_;
  std::vector<Mask> rec_mask_;
  std::vector<int> ecost_;
  std::vector<int> gain_;
  std::vector<int> pending_;
  std::vector<std::size_t> touched_;
  std::vector<int> before_;
  std::vector<std::uint8_t> moved_;
  long cost_ = 0;
};

}  // namespace

long fm_pass(const TemporalHypergraph& h, Assignment& phi, const CostEngine& engine,
             std::span<const QpuId> targets, const FmOptions& options, FmStats* stats) {
  Refiner refiner(h, phi, engine, targets, options, stats);
  return refiner.pass();
}

long fm_refine(const TemporalHypergraph& h, Assignment& phi, const CostEngine& engine,
               std::span<const QpuId> targets, const FmOptions& options, FmStats* stats) {
  Refiner refiner(h, phi, engine, targets, options, stats);
  for (int p = 0; p < options.max_passes; ++p) {
    if (refiner.pass() == 0) break;
  }
  return total_cost(h, phi, engine);
}

long move_gain(const TemporalHypergraph& h, NodeId v, QpuId target, const Assignment& phi,
               const CostEngine& engine) {
  Assignment probe = phi;
  probe.qpu[v] = target;
  long gain = 0;
  for (const Incidence& inc : h.incident(v)) {
    gain += edge_cost(h, inc.edge, phi, engine) - edge_cost(h, inc.edge, probe, engine);
  }
  return gain;
}

int gain_delta(const TemporalHypergraph& h, NodeId u, QpuId u_target, NodeId v,
               QpuId v_target, const Assignment& phi, const CostEngine& engine) {
  if (u == v) throw std::invalid_argument("gain_delta needs two distinct nodes");
  Assignment u_moved = phi;
  u_moved.qpu[u] = u_target;
  Assignment v_moved = phi;
  v_moved.qpu[v] = v_target;
  Assignment both = v_moved;
  both.qpu[u] = u_target;
  int delta = 0;
  for (const Incidence& a : h.incident(u)) {
    for (const Incidence& b : h.incident(v)) {
      if (a.edge != b.edge) continue;
      delta += edge_cost(h, a.edge, v_moved, engine) - edge_cost(h, a.edge, both, engine) -
               edge_cost(h, a.edge, phi, engine) + edge_cost(h, a.edge, u_moved, engine);
    }
  }
  return delta;
}

}  // namespace qnetpart
