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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "qnetpart/circuit.hpp"
#include "qnetpart/network.hpp"

namespace qnetpart::testing {

/// Random {U, CP} circuit where every timestep is filled: disjoint pairs get
/// CP gates with probability `p_cp`, other qubits get diagonal or
/// non-diagonal U gates or stay idle.
inline Circuit random_circuit(int n, int d, std::uint64_t seed, double p_cp = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Circuit c(n);
  std::vector<int> order(n);
  for (int t = 0; t < d; ++t) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    int i = 0;
    for (; i + 1 < n; i += 2) {
      if (unit(rng) >= p_cp) break;
      c.place(Gate::cp(order[i], order[i + 1], 1.0), t);
    }
    for (; i < n; ++i) {
      const double r = unit(rng);
      if (r < 0.3) {
        c.place(Gate::u(order[i], 0.0, 0.0, 0.5), t);
      } else if (r < 0.7) {
        c.place(Gate::u(order[i], 0.7, 0.1, 0.2), t);
      }
    }
  }
  // Pad so the circuit has the requested depth even if the last steps are idle.
  while (c.depth() < d) c.place(Gate::u(0, 0.0, 0.0, 0.1), c.depth());
  return c;
}

/// All-pairs hop distances by Floyd-Warshall over the link list.
inline std::vector<std::vector<int>> floyd_warshall(int n, const std::vector<Link>& links) {
  constexpr int kInf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [a, b] : links) d[a][b] = d[b][a] = 1;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

/// Random connected graph with at most `max_links` links: a random spanning
/// tree plus extra random links.
inline NetworkGraph random_graph(int n, int max_links, std::uint64_t seed, int capacity = 4) {
  std::mt19937_64 rng(seed);
  std::vector<Link> links;
  for (int v = 1; v < n; ++v) {
    links.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int tries = 0; static_cast<int>(links.size()) < max_links && tries < 200; ++tries) {
    int a = pick(rng);
    int b = pick(rng);
    if (a == b) continue;
    Link l{std::min(a, b), std::max(a, b)};
    if (std::find(links.begin(), links.end(), l) == links.end()) links.push_back(l);
  }
  std::vector<Qpu> qpus(n);
  for (int i = 0; i < n; ++i) qpus[i] = {capacity, {i}};
  return NetworkGraph(std::move(qpus), std::move(links));
}

}  // namespace qnetpart::testing
