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

#include <numbers>
#include <set>

#include "qnetpart/circuit.hpp"

namespace qnetpart {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(CircuitTest, AppendPlacesGatesAsSoonAsPossible) {
  Circuit c(3);
  EXPECT_EQ(c.append(Gate::u(0, 1, 0, 0)), 0);
  EXPECT_EQ(c.append(Gate::u(1, 1, 0, 0)), 0);
  EXPECT_EQ(c.append(Gate::cp(0, 1, 1)), 1);
  EXPECT_EQ(c.append(Gate::u(2, 1, 0, 0)), 0);
  EXPECT_EQ(c.append(Gate::cp(1, 2, 1)), 2);
  EXPECT_EQ(c.depth(), 3);
  ASSERT_NE(c.gate_on(2, 2), nullptr);
  EXPECT_EQ(c.gate_on(2, 1), nullptr);
}

TEST(CircuitTest, RejectsBadQubits) {
  Circuit c(2);
  EXPECT_THROW(c.append(Gate::u(2, 0, 0, 0)), std::out_of_range);
  EXPECT_THROW(c.append(Gate::cp(1, 1, 1)), std::invalid_argument);
  c.place(Gate::u(0, 1, 0, 0), 0);
  EXPECT_THROW(c.place(Gate::cp(0, 1, 1), 0), std::invalid_argument);
}

TEST(CircuitTest, DiagonalFlagFollowsTheta) {
  EXPECT_TRUE(Gate::u(0, 0.0, 0.0, 0.3).diagonal);
  EXPECT_FALSE(Gate::u(0, 0.1, 0.0, 0.3).diagonal);
}

TEST(CircuitTest, RewriteCzIsControlledPhasePi) {
  Circuit c(2);
  const int qs[] = {0, 1};
  c.append(Gate::alias(GateKind::CZ, qs));
  const Circuit out = rewrite_to_basis(c);
  ASSERT_EQ(out.depth(), 1);
  const Gate& g = out.at(0)[0];
  EXPECT_EQ(g.kind, GateKind::ControlledPhase);
  EXPECT_DOUBLE_EQ(g.params[0], kPi);
  EXPECT_EQ(g.qubits[0], 0);
  EXPECT_EQ(g.qubits[1], 1);
}

TEST(CircuitTest, RewriteCxConjugatesTargetWithHadamards) {
  Circuit c(2);
  const int qs[] = {0, 1};
  c.append(Gate::alias(GateKind::CX, qs));
  const Circuit out = rewrite_to_basis(c);
  ASSERT_EQ(out.depth(), 3);
  const Gate& h1 = out.at(0)[0];
  EXPECT_EQ(h1.kind, GateKind::SingleU);
  EXPECT_EQ(h1.qubits[0], 1);
  EXPECT_DOUBLE_EQ(h1.params[0], kPi / 2);
  EXPECT_DOUBLE_EQ(h1.params[1], 0.0);
  EXPECT_DOUBLE_EQ(h1.params[2], kPi);
  EXPECT_EQ(out.at(1)[0].kind, GateKind::ControlledPhase);
  EXPECT_DOUBLE_EQ(out.at(1)[0].params[0], kPi);
  EXPECT_EQ(out.at(2)[0].qubits[0], 1);
  EXPECT_TRUE(out.in_basis());
}

TEST(CircuitTest, RewriteSingleQubitAliases) {
  Circuit c(1);
  const int q[] = {0};
  c.append(Gate::alias(GateKind::RZ, q, 0.3));
  c.append(Gate::alias(GateKind::X, q));
  c.append(Gate::alias(GateKind::Z, q));
  const Circuit out = rewrite_to_basis(c);
  ASSERT_EQ(out.depth(), 3);
  EXPECT_TRUE(out.at(0)[0].diagonal);
  EXPECT_DOUBLE_EQ(out.at(0)[0].params[2], 0.3);
  EXPECT_FALSE(out.at(1)[0].diagonal);
  EXPECT_DOUBLE_EQ(out.at(1)[0].params[0], kPi);
  EXPECT_TRUE(out.at(2)[0].diagonal);
  EXPECT_DOUBLE_EQ(out.at(2)[0].params[2], kPi);
}

TEST(CpFractionTest, ZeroFractionHasNoTwoQubitGates) {
  const Circuit c = generate_cp_fraction(8, 5, 0.0, 3);
  EXPECT_EQ(c.depth(), 5);
  EXPECT_EQ(c.two_qubit_gate_count(), 0u);
  for (const auto& step : c.timesteps()) {
    for (const Gate& g : step) EXPECT_FALSE(g.diagonal);
  }
}

TEST(CpFractionTest, FullFractionPairsEveryQubit) {
  const Circuit c = generate_cp_fraction(6, 4, 1.0, 9);
  for (const auto& step : c.timesteps()) {
    EXPECT_EQ(step.size(), 3u);
    for (const Gate& g : step) EXPECT_EQ(g.kind, GateKind::ControlledPhase);
  }
}

TEST(CpFractionTest, PairsPerTimestepIsFloorOfFractionTimesHalfN) {
  for (int n : {2, 5, 10, 20}) {
    for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const Circuit c = generate_cp_fraction(n, 3, f, 11);
      const std::size_t expected = static_cast<std::size_t>(f * n / 2 + 1e-9);
      for (int t = 0; t < c.depth(); ++t) {
        std::size_t cps = 0;
        std::set<int> busy;
        for (const Gate& g : c.at(t)) {
          cps += g.kind == GateKind::ControlledPhase;
          for (int i = 0; i < g.arity(); ++i) EXPECT_TRUE(busy.insert(g.qubits[i]).second);
        }
        EXPECT_EQ(cps, expected) << "n=" << n << " f=" << f;
        EXPECT_EQ(busy.size(), static_cast<std::size_t>(n));
      }
    }
  }
}

TEST(CpFractionTest, DeterministicPerSeed) {
  const Circuit a = generate_cp_fraction(10, 6, 0.5, 42);
  const Circuit b = generate_cp_fraction(10, 6, 0.5, 42);
  const Circuit c = generate_cp_fraction(10, 6, 0.5, 43);
  ASSERT_EQ(a.depth(), b.depth());
  bool differs = false;
  for (int t = 0; t < a.depth(); ++t) {
    ASSERT_EQ(a.at(t).size(), b.at(t).size());
    for (std::size_t i = 0; i < a.at(t).size(); ++i) {
      EXPECT_EQ(a.at(t)[i].qubits, b.at(t)[i].qubits);
      EXPECT_EQ(a.at(t)[i].params, b.at(t)[i].params);
      differs |= a.at(t)[i].qubits != c.at(t)[i].qubits;
    }
  }
  EXPECT_TRUE(differs);
}

TEST(CpFractionTest, RejectsBadParameters) {
  EXPECT_THROW(generate_cp_fraction(1, 3, 0.5, 0), std::invalid_argument);
  EXPECT_THROW(generate_cp_fraction(4, 0, 0.5, 0), std::invalid_argument);
  EXPECT_THROW(generate_cp_fraction(4, 3, 1.5, 0), std::invalid_argument);
  EXPECT_THROW(generate_cp_fraction(4, 3, -0.1, 0), std::invalid_argument);
}

}  // namespace
}  // namespace qnetpart
