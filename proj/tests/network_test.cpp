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

#include "qnetpart/network.hpp"
#include "test_util.hpp"

namespace qnetpart {
namespace {

TEST(NetworkTest, LinearIsAPath) {
  const NetworkGraph g = make_linear(4, 8);
  EXPECT_EQ(g.links(), (std::vector<Link>{{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(g.distance(0, 3), 3);
  EXPECT_EQ(g.diameter(), 3);
  EXPECT_EQ(g.total_capacity(), 32);
}

TEST(NetworkTest, GridIsALattice) {
  const NetworkGraph g = make_grid(2, 2, 8);
  EXPECT_EQ(g.size(), 4);
  EXPECT_EQ(g.links().size(), 4u);
  for (QpuId a = 0; a < 4; ++a) {
    for (QpuId b = 0; b < 4; ++b) EXPECT_LE(g.distance(a, b), 2);
  }
  const NetworkGraph big = make_grid(3, 4, 1);
  EXPECT_EQ(big.links().size(), 17u);
  EXPECT_EQ(big.distance(0, 11), 5);
}

TEST(NetworkTest, RandomWithCertainLinksIsComplete) {
  const NetworkGraph g = make_random(6, 1.0, 8, 5);
  EXPECT_EQ(g.links().size(), 15u);
}

TEST(NetworkTest, RandomIsConnectedAndSeeded) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const NetworkGraph a = make_random(10, 0.3, 4, seed);
    const NetworkGraph b = make_random(10, 0.3, 4, seed);
    EXPECT_TRUE(is_connected(a.size(), a.links()));
    EXPECT_EQ(a.links(), b.links());
  }
  EXPECT_THROW(make_random(30, 0.001, 4, 1, 5), std::runtime_error);
}

TEST(NetworkTest, DistancesMatchFloydWarshall) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const NetworkGraph g = make_random(9, 0.35, 2, seed);
    const auto oracle = testing::floyd_warshall(g.size(), g.links());
    for (QpuId a = 0; a < g.size(); ++a) {
      for (QpuId b = 0; b < g.size(); ++b) {
        EXPECT_EQ(g.distance(a, b), oracle[a][b]);
        EXPECT_EQ(g.distance(a, b), g.distance(b, a));
        for (QpuId c = 0; c < g.size(); ++c) {
          EXPECT_LE(g.distance(a, c), g.distance(a, b) + g.distance(b, c));
        }
      }
    }
  }
}

TEST(NetworkTest, RejectsDisconnectedAndBadLinks) {
  std::vector<Qpu> qpus(3, Qpu{1, {}});
  EXPECT_THROW(NetworkGraph(qpus, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(NetworkGraph(qpus, {{0, 1}, {1, 5}}), std::invalid_argument);
  const NetworkGraph g(qpus, {{1, 0}, {0, 1}, {2, 1}, {2, 2}});
  EXPECT_EQ(g.links(), (std::vector<Link>{{0, 1}, {1, 2}}));
}

TEST(NetworkTest, ParsesTopologySpecs) {
  EXPECT_EQ(parse_topology("linear:5", 3).size(), 5);
  EXPECT_EQ(parse_topology("grid:3x4", 3).size(), 12);
  EXPECT_EQ(parse_topology("random:7:0.5", 3, 1).size(), 7);
  EXPECT_EQ(parse_topology("complete:4", 3).links().size(), 6u);
  EXPECT_EQ(topology_size("grid:2x5"), 10);
  EXPECT_THROW(parse_topology("ring:4", 3), std::invalid_argument);
  EXPECT_THROW(parse_topology("linear:x", 3), std::invalid_argument);
  EXPECT_THROW(parse_topology("random:4:0", 3), std::invalid_argument);
}

TEST(NetworkTest, QuotientMergesGroups) {
  const NetworkGraph g = make_linear(4, 2);
  const std::vector<std::vector<QpuId>> groups{{0, 1}, {2, 3}};
  const NetworkGraph q = quotient(g, groups, 1);
  EXPECT_EQ(q.size(), 2);
  EXPECT_EQ(q.links(), (std::vector<Link>{{0, 1}}));
  EXPECT_EQ(q.capacity(0), 4);
  EXPECT_EQ(q.members(1), (std::vector<QpuId>{2, 3}));
  EXPECT_EQ(q.total_capacity(), g.total_capacity());
  EXPECT_EQ(q.level(), 1);
}

TEST(NetworkTest, FingerprintTracksStructure) {
  EXPECT_EQ(make_linear(4, 2).fingerprint(), make_linear(4, 2).fingerprint());
  EXPECT_NE(make_linear(4, 2).fingerprint(), make_linear(4, 3).fingerprint());
  EXPECT_NE(make_linear(4, 2).fingerprint(), make_grid(2, 2, 2).fingerprint());
  EXPECT_NE(make_linear(3, 1).dump().find("qpu 1 cap=1"), std::string::npos);
}

}  // namespace
}  // namespace qnetpart
