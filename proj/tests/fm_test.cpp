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

#include <gtest/gtest.h>

#include <random>

#include "qnetpart/fm.hpp"
#include "qnetpart/oracles.hpp"
#include "test_util.hpp"

namespace qnetpart {
namespace {

long full_gain(const TemporalHypergraph& h, const Assignment& phi, NodeId v, QpuId k,
               const CostEngine& engine) {
  Assignment moved = phi;
  moved.qpu[v] = k;
  return total_cost(h, phi, engine) - total_cost(h, moved, engine);
}

Assignment random_feasible(const TemporalHypergraph& h, const NetworkGraph& g,
                           std::mt19937_64& rng) {
  // Shuffle each timestep's qubits over the available slots.
  Assignment phi(h.num_nodes());
  std::vector<QpuId> slots;
  for (QpuId q = 0; q < g.size(); ++q) slots.insert(slots.end(), g.capacity(q), q);
  for (int t = 0; t < h.depth(); ++t) {
    std::shuffle(slots.begin(), slots.end(), rng);
    for (int q = 0; q < h.num_qubits(); ++q) phi.qpu[node_id(q, t, h.depth())] = slots[q];
  }
  return phi;
}

TEST(GainDeltaTest, NoSharedEdgeIsZero) {
  Circuit c(4);
  c.place(Gate::cp(0, 1, 1.0), 0);
  c.place(Gate::cp(2, 3, 1.0), 0);
  const TemporalHypergraph h = build_temporal_hypergraph(c);
  const CostEngine engine(make_linear(3, 4));
  Assignment phi(h.num_nodes());
  phi.qpu = {0, 1, 2, 0};
  EXPECT_EQ(gain_delta(h, 0, 2, 2, 1, phi, engine), 0);
}

TEST(GainDeltaTest, StateEdgeJoinMatchesRecomputation) {
  Circuit c(1);
  c.place(Gate::u(0, 0.0, 0.0, 0.1), 0);
  c.place(Gate::u(0, 0.0, 0.0, 0.1), 1);
  const TemporalHypergraph h = build_temporal_hypergraph(c);
  const CostEngine engine(make_linear(2, 1));
  Assignment phi(2);
  phi.qpu = {0, 1};
  // u = node 0 on QPU 0, v = node 1 on QPU 1; v moves onto QPU 0.
  const long before = full_gain(h, phi, 0, 1, engine);
  Assignment after = phi;
  after.qpu[1] = 0;
  const long now = full_gain(h, after, 0, 1, engine);
  EXPECT_EQ(before, 1);
  EXPECT_EQ(now, -1);
  EXPECT_EQ(gain_delta(h, 0, 1, 1, 0, phi, engine), now - before);
}

TEST(GainDeltaTest, MatchesRecomputationOnRandomInstances) {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TemporalHypergraph h = build_temporal_hypergraph(testing::random_circuit(5, 5, seed));
    const NetworkGraph g = make_grid(2, 2, 5);
    const CostEngine engine(g);
    Assignment phi(h.num_nodes());
    for (auto& q : phi.qpu) q = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int trial = 0; trial < 50; ++trial) {
      const NodeId v = std::uniform_int_distribution<NodeId>(0, h.num_nodes() - 1)(rng);
      const NodeId u = std::uniform_int_distribution<NodeId>(0, h.num_nodes() - 1)(rng);
      if (u == v) continue;
      const QpuId kv = std::uniform_int_distribution<QpuId>(0, 3)(rng);
      const QpuId ku = std::uniform_int_distribution<QpuId>(0, 3)(rng);
      Assignment after = phi;
      after.qpu[v] = kv;
      EXPECT_EQ(gain_delta(h, u, ku, v, kv, phi, engine),
                full_gain(h, after, u, ku, engine) - full_gain(h, phi, u, ku, engine));
      EXPECT_EQ(move_gain(h, u, ku, phi, engine), full_gain(h, phi, u, ku, engine));
    }
  }
}

TEST(FmTest, SplitPairIsJoined) {
  Circuit c(2);
  c.place(Gate::cp(0, 1, 1.0), 0);
  const TemporalHypergraph h = build_temporal_hypergraph(c);
  const CostEngine engine(make_linear(2, 2));
  Assignment phi(2);
  phi.qpu = {0, 1};
  EXPECT_EQ(fm_pass(h, phi, engine), 1);
  EXPECT_EQ(total_cost(h, phi, engine), 0);
  EXPECT_EQ(phi.qpu[0], phi.qpu[1]);
}

TEST(FmTest, OptimalInputIsAFixedPoint) {
  Circuit c(2);
  c.place(Gate::cp(0, 1, 1.0), 0);
  c.place(Gate::cp(0, 1, 1.0), 1);
  const TemporalHypergraph h = build_temporal_hypergraph(c);
  const CostEngine engine(make_linear(2, 2));
  Assignment phi(h.num_nodes());
  phi.qpu.assign(h.num_nodes(), 1);
  const Assignment before = phi;
  EXPECT_EQ(fm_pass(h, phi, engine), 0);
  EXPECT_EQ(phi, before);
}

TEST(FmTest, RejectsInfeasibleInput) {
  Circuit c(2);
  c.place(Gate::cp(0, 1, 1.0), 0);
  const TemporalHypergraph h = build_temporal_hypergraph(c);
  const CostEngine engine(make_linear(2, 1));
  Assignment phi(2);
  phi.qpu = {0, 0};
  EXPECT_THROW(fm_pass(h, phi, engine), std::invalid_argument);
}

TEST(FmTest, AuditedGainsAreExact) {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TemporalHypergraph h = build_temporal_hypergraph(testing::random_circuit(8, 6, seed));
    const NetworkGraph g = seed % 2 ? make_linear(4, 2) : make_grid(2, 2, 2);
    const CostEngine engine(g);
    Assignment phi = random_feasible(h, g, rng);
    FmOptions options;
    options.audit_points = 100;
    options.audit_seed = seed;
    FmStats stats;
    fm_refine(h, phi, engine, {}, options, &stats);
    EXPECT_GT(stats.audits, 0);
    EXPECT_EQ(stats.audit_mismatches, 0);
  }
}

TEST(FmTest, NeverWorsensAndStaysFeasible) {
  std::mt19937_64 rng(9);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TemporalHypergraph h = build_temporal_hypergraph(testing::random_circuit(6, 6, seed));
    const NetworkGraph g = make_linear(3, seed % 2 ? 2 : 3);
    const CostEngine engine(g);
    for (bool exchange : {true, false}) {
      Assignment phi = random_feasible(h, g, rng);
      const long start = total_cost(h, phi, engine);
      FmOptions options;
      options.allow_exchange = exchange;
      const long end = fm_refine(h, phi, engine, {}, options);
      EXPECT_LE(end, start);
      EXPECT_EQ(end, total_cost(h, phi, engine));
      EXPECT_TRUE(is_feasible(h, phi, g));
    }
  }
}

TEST(FmTest, NotBelowBruteForceOptimum) {
  std::mt19937_64 rng(13);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const TemporalHypergraph h = build_temporal_hypergraph(testing::random_circuit(6, 4, seed));
    const NetworkGraph g = make_linear(3, 2);
    const CostEngine engine(g);
    const OracleResult best = brute_force_partition(h, engine, 24);
    Assignment phi = random_feasible(h, g, rng);
    const long start = total_cost(h, phi, engine);
    const long end = fm_refine(h, phi, engine);
    EXPECT_GE(end, best.cost);
    EXPECT_LE(end, start);
  }
}

TEST(FmTest, LockedNodesAndTargetsAreRespected) {
  std::mt19937_64 rng(2);
  const TemporalHypergraph h = build_temporal_hypergraph(testing::random_circuit(6, 4, 3));
  const NetworkGraph g = make_linear(4, 3);
  const CostEngine engine(g);
  Assignment phi(h.num_nodes());
  for (std::size_t v = 0; v < phi.size(); ++v) {
    const int q = h.node(static_cast<NodeId>(v)).qubit;
    phi.qpu[v] = q < 3 ? 0 : 1;
    phi.locked[v] = q == 0;
  }
  const std::vector<QpuId> targets{0, 1};
  fm_refine(h, phi, engine, targets);
  for (std::size_t v = 0; v < phi.size(); ++v) {
    EXPECT_TRUE(phi.qpu[v] == 0 || phi.qpu[v] == 1);
    if (phi.is_locked(v)) EXPECT_EQ(phi.qpu[v], 0);
  }
}

}  // namespace
}  // namespace qnetpart
