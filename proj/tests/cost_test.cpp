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

#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <thread>

#include "qnetpart/cost.hpp"
#include "qnetpart/oracles.hpp"
#include "test_util.hpp"

namespace qnetpart {
namespace {

Mask bits(std::initializer_list<int> ids) {
  Mask m = 0;
  for (int i : ids) m |= qpu_bit(i);
  return m;
}

// Sum over receivers outside the tree of their hop distance to the tree.
int distance_sum_bound(const NetworkGraph& g, Mask tree, Mask rec) {
  int total = 0;
  for (Mask r = rec & ~tree; r; r &= r - 1) {
    const QpuId q = std::countr_zero(r);
    int best = 1 << 20;
    for (Mask t = tree; t; t &= t - 1) best = std::min(best, g.distance(q, std::countr_zero(t)));
    total += best;
  }
  return total;
}

TEST(AllToAllTest, SetDifference) {
  EXPECT_EQ(alltoall_cost({bits({0}), bits({0})}), 0);
  EXPECT_EQ(alltoall_cost({bits({0}), bits({1, 2})}), 2);
  EXPECT_EQ(alltoall_cost({bits({0, 1}), bits({1, 2})}), 1);
}

TEST(RootTreeTest, SingleRootAndPath) {
  const NetworkGraph g = make_linear(4, 1);
  const Tree single = root_tree(bits({2}), g);
  EXPECT_EQ(single.nodes, bits({2}));
  EXPECT_TRUE(single.edges.empty());
  const Tree path = root_tree(bits({0, 3}), g);
  EXPECT_EQ(path.nodes, bits({0, 1, 2, 3}));
  EXPECT_EQ(path.edges.size(), 3u);
}

TEST(RootTreeTest, GridCornersBetweenSteinerAndPairwisePaths) {
  const NetworkGraph g = make_grid(2, 3, 1);
  const Mask roots = bits({0, 2, 5});
  const Tree tree = root_tree(roots, g);
  // Exhaustive Steiner tree: smallest link subset connecting the roots.
  const auto& links = g.links();
  int best = 100;
  for (std::uint32_t s = 0; s < (1u << links.size()); ++s) {
    std::vector<int> comp(g.size());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (std::size_t i = 0; i < links.size(); ++i) {
      if (s >> i & 1) comp[find(links[i].first)] = find(links[i].second);
    }
    if (find(0) == find(2) && find(2) == find(5)) best = std::min(best, std::popcount(s));
  }
  const int pairwise = g.distance(0, 2) + g.distance(2, 5) + g.distance(0, 5);
  EXPECT_GE(static_cast<int>(tree.edges.size()), best);
  EXPECT_LE(static_cast<int>(tree.edges.size()), pairwise);
}

TEST(ForestTest, LinearExample) {
  const NetworkGraph g = make_linear(4, 1);
  const Forest f = forest_cost({bits({0}), bits({1, 3})}, g);
  EXPECT_EQ(f.cost, 3);
  EXPECT_EQ(brute_force_steiner_forest(g, bits({0}), bits({1, 3})), 3);
}

TEST(ForestTest, ReceiversOnTreeAreFree) {
  const NetworkGraph g = make_grid(3, 3, 1);
  EXPECT_EQ(forest_cost({bits({0, 8}), bits({0, 8})}, g).cost, 0);
  // The root tree between opposite corners passes through intermediate nodes.
  const Tree t = root_tree(bits({0, 8}), g);
  EXPECT_EQ(forest_cost({bits({0, 8}), t.nodes}, g).cost, 0);
  EXPECT_EQ(brute_force_steiner_forest(g, bits({0, 8}), t.nodes), 0);
}

TEST(ForestTest, SingleReceiverCostsDistanceToTree) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const NetworkGraph g = make_random(8, 0.3, 1, seed);
    for (QpuId r = 0; r < 8; ++r) {
      const Tree t = root_tree(bits({0, 5}), g);
      EXPECT_EQ(forest_cost({bits({0, 5}), qpu_bit(r)}, g).cost,
                distance_sum_bound(g, t.nodes, qpu_bit(r)));
      EXPECT_EQ(brute_force_steiner_forest(g, bits({0, 5}), qpu_bit(r)),
                distance_sum_bound(g, t.nodes, qpu_bit(r)));
    }
  }
}

TEST(ForestTest, GridFigureScenario) {
  const NetworkGraph g = make_grid(3, 3, 1);
  const ConfigPair pair{bits({0, 6}), bits({1, 4, 5})};
  const int oracle = brute_force_steiner_forest(g, pair.root, pair.rec);
  EXPECT_EQ(forest_cost(pair, g).cost, oracle);
}

TEST(ForestTest, CompleteGraphEqualsAllToAll) {
  for (int n = 2; n <= 5; ++n) {
    const NetworkGraph g = make_complete(n, 1);
    for (Mask root = 1; root < (Mask{1} << n); ++root) {
      for (Mask rec = 0; rec < (Mask{1} << n); ++rec) {
        EXPECT_EQ(forest_cost({root, rec}, g).cost, alltoall_cost({root, rec}));
      }
    }
  }
}

TEST(ForestTest, SandwichedBetweenOracleAndDistanceSum) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const NetworkGraph g = testing::random_graph(7, 10, seed);
    const int n = g.size();
    for (Mask root = 1; root < (Mask{1} << n); ++root) {
      if (std::popcount(root) > 3) continue;
      const Tree tree = root_tree(root, g);
      for (Mask rec = 0; rec < (Mask{1} << n); ++rec) {
        if (std::popcount(rec) > 3) continue;
        const int msbfs = forest_cost({root, rec}, g).cost;
        EXPECT_LE(brute_force_steiner_forest(g, root, rec), msbfs);
        EXPECT_LE(msbfs, distance_sum_bound(g, tree.nodes, rec));
      }
    }
  }
}

TEST(ForestTest, MonotoneInReceivers) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const NetworkGraph g = testing::random_graph(5, 7, seed);
    for (Mask root = 1; root < 32; ++root) {
      for (Mask rec = 0; rec < 32; ++rec) {
        const int base = forest_cost({root, rec}, g).cost;
        for (int b = 0; b < 5; ++b) {
          EXPECT_GE(forest_cost({root, rec | qpu_bit(b)}, g).cost, base);
        }
      }
    }
  }
}

TEST(ForestTest, MonotoneInRootsOnTreesAndCompleteGraphs) {
  std::vector<NetworkGraph> graphs{make_linear(5, 1), make_complete(5, 1)};
  for (std::uint64_t seed = 0; seed < 4; ++seed) graphs.push_back(testing::random_graph(5, 4, seed));
  for (const NetworkGraph& g : graphs) {
    for (Mask root = 1; root < 32; ++root) {
      for (Mask rec = 0; rec < 32; ++rec) {
        const int base = forest_cost({root, rec}, g).cost;
        for (int b = 0; b < 5; ++b) {
          EXPECT_LE(forest_cost({root | qpu_bit(b), rec}, g).cost, base);
        }
      }
    }
  }
}

TEST(ForestTest, ExtraRootCanRerouteTreeAwayFromReceiver) {
  // 4-cycle 0-1-2-3-0: roots {0, 2} pass through receiver 1, but adding
  // root 3 makes 0-3-2 the tree and leaves 1 one hop away.
  const NetworkGraph g({{1, {0}}, {1, {1}}, {1, {2}}, {1, {3}}},
                       {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  EXPECT_EQ(forest_cost({qpu_bit(0) | qpu_bit(2), qpu_bit(1)}, g).cost, 0);
  EXPECT_EQ(forest_cost({qpu_bit(0) | qpu_bit(2) | qpu_bit(3), qpu_bit(1)}, g).cost, 1);
}

TEST(ForestTest, RejectsReceiversWithoutRoots) {
  EXPECT_THROW(forest_cost({0, 1}, make_linear(2, 1)), std::invalid_argument);
  EXPECT_EQ(forest_cost({0, 0}, make_linear(2, 1)).cost, 0);
}

TEST(CostEngineTest, DenseAndMemoAgree) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const NetworkGraph g = make_random(6, 0.4, 1, seed);
    const CostEngine dense(g, 10);
    const CostEngine memo(g, 0);
    ASSERT_TRUE(dense.dense());
    ASSERT_FALSE(memo.dense());
    for (Mask root = 1; root < 64; ++root) {
      for (Mask rec = 0; rec < 64; ++rec) {
        const int expected = forest_cost({root, rec}, g).cost;
        EXPECT_EQ(dense.cost({root, rec}), expected);
        EXPECT_EQ(memo.cost({root, rec}), expected);
      }
    }
    EXPECT_EQ(memo.memo_size(), 63u * 64u);
  }
}

TEST(CostEngineTest, ConcurrentMemoIsConsistent) {
  const NetworkGraph g = make_grid(3, 4, 1);
  const CostEngine engine(g, 0);
  std::vector<std::thread> threads;
  std::vector<long> sums(4, 0);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      std::mt19937_64 rng(1);
      for (int i = 0; i < 3000; ++i) {
        const Mask root = std::uniform_int_distribution<Mask>(1, 4095)(rng);
        const Mask rec = std::uniform_int_distribution<Mask>(0, 4095)(rng);
        sums[t] += engine.cost({root, rec});
      }
    });
  }
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) EXPECT_EQ(sums[t], sums[0]);
}

TEST(CostEngineTest, TableRoundTrip) {
  const std::string path = ::testing::TempDir() + "qnetpart_table.bin";
  const NetworkGraph g = make_grid(2, 3, 1);
  const CostEngine source(g);
  source.save_table(path);
  CostEngine copy(g);
  EXPECT_TRUE(copy.load_table(path));
  for (Mask root = 1; root < 64; ++root) {
    for (Mask rec = 0; rec < 64; ++rec) EXPECT_EQ(copy.cost({root, rec}), source.cost({root, rec}));
  }
  CostEngine other(make_linear(6, 1));
  EXPECT_FALSE(other.load_table(path));

  const CostEngine memo(g, 0);
  memo.cost({bits({0}), bits({5})});
  memo.save_table(path);
  CostEngine memo_copy(g, 0);
  EXPECT_TRUE(memo_copy.load_table(path));
  EXPECT_EQ(memo_copy.memo_size(), 1u);
  std::remove(path.c_str());
}

TEST(EdgeCostTest, StateEdgesCostHopDistance) {
  Circuit c(1);
  c.place(Gate::u(0, 0.0, 0.0, 0.1), 0);
  c.place(Gate::u(0, 0.0, 0.0, 0.1), 1);
  const TemporalHypergraph h = build_temporal_hypergraph(c);
  const CostEngine engine(make_linear(4, 1));
  Assignment phi(2);
  phi.qpu = {3, 3};
  EXPECT_EQ(edge_cost(h, 0, phi, engine), 0);
  phi.qpu = {0, 3};
  EXPECT_EQ(edge_cost(h, 0, phi, engine), 3);
  phi.qpu = {0, kUnassigned};
  EXPECT_THROW(edge_cost(h, 0, phi, engine), std::invalid_argument);
}

TEST(EdgeCostTest, TotalCostMatchesUncachedRecomputation) {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TemporalHypergraph h = build_temporal_hypergraph(testing::random_circuit(6, 6, seed));
    const NetworkGraph g = make_random(5, 0.5, 8, seed);
    const CostEngine engine(g);
    Assignment phi(h.num_nodes());
    for (auto& q : phi.qpu) q = std::uniform_int_distribution<int>(0, 4)(rng);
    EXPECT_EQ(total_cost(h, phi, engine), total_cost_uncached(h, phi, g));
  }
}

TEST(EdgeCostTest, SplitGateOnAdjacentQpus) {
  Circuit c(2);
  c.place(Gate::cp(0, 1, 1.0), 0);
  const TemporalHypergraph h = build_temporal_hypergraph(c);
  const CostEngine engine(make_linear(2, 1));
  Assignment phi(2);
  phi.qpu = {0, 1};
  EXPECT_EQ(total_cost(h, phi, engine), 1);
  phi.qpu = {0, 0};
  EXPECT_EQ(total_cost(h, phi, engine), 0);
}

}  // namespace
}  // namespace qnetpart
