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
#include <string>

#include "qnetpart/qasm.hpp"

namespace qnetpart {
namespace {

constexpr double kPi = std::numbers::pi;

int error_line(const std::string& text) {
  try {
    parse_qasm(text);
  } catch (const QasmError& e) {
    return e.line();
  }
  return -1;
}

TEST(QasmTest, EmptyProgram) {
  const Circuit c = parse_qasm("OPENQASM 2.0;\nqreg q[2];\n");
  EXPECT_EQ(c.num_qubits(), 2);
  EXPECT_EQ(c.depth(), 0);
}

TEST(QasmTest, SingleControlledPhase) {
  const Circuit c = parse_qasm("qreg q[2]; cp(pi/2) q[0],q[1];");
  ASSERT_EQ(c.depth(), 1);
  const Gate& g = c.at(0)[0];
  EXPECT_EQ(g.kind, GateKind::ControlledPhase);
  EXPECT_DOUBLE_EQ(g.params[0], kPi / 2);
}

TEST(QasmTest, SamePairGatesTakeConsecutiveSteps) {
  const Circuit c = parse_qasm("qreg q[2]; cp(1) q[0],q[1]; cp(1) q[0],q[1];");
  EXPECT_EQ(c.depth(), 2);
  EXPECT_EQ(c.at(0).size(), 1u);
  EXPECT_EQ(c.at(1).size(), 1u);
}

TEST(QasmTest, ExpressionsAndAliases) {
  const Circuit c = parse_qasm("qreg q[1]; u1(-(pi/4)*2 + 2^2) q[0];");
  ASSERT_EQ(c.depth(), 1);
  EXPECT_TRUE(c.at(0)[0].diagonal);
  EXPECT_NEAR(c.at(0)[0].params[2], -kPi / 2 + 4, 1e-12);
}

TEST(QasmTest, LoadsFileAndRewrites) {
  const Circuit c = load_qasm_file(std::string(QNETPART_TEST_DATA) + "/small.qasm");
  EXPECT_EQ(c.num_qubits(), 3);
  EXPECT_TRUE(c.in_basis());
  // h q0 | H q1 | CP q0,q1 | H q1, rz q0 | ...
  EXPECT_EQ(c.two_qubit_gate_count(), 2u);
  const Gate* cp = c.gate_on(0, 1);
  ASSERT_NE(cp, nullptr);
  EXPECT_EQ(cp->kind, GateKind::ControlledPhase);
  const Gate* rz = c.gate_on(0, 2);
  ASSERT_NE(rz, nullptr);
  EXPECT_TRUE(rz->diagonal);
  const Gate* cp2 = c.gate_on(2, 3);
  ASSERT_NE(cp2, nullptr);
  EXPECT_DOUBLE_EQ(cp2->params[0], -kPi / 2);
}

TEST(QasmTest, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("qreg q[2];\nfoo q[0];\n"), 2);
  EXPECT_EQ(error_line("qreg q[2];\n\nh q[5];\n"), 3);
  EXPECT_EQ(error_line("qreg q[2];\nh q[0]\ncx q[0],q[1];\n"), 3);
  EXPECT_EQ(error_line("qreg q[2];\ncreg c[2];\n"), 2);
  EXPECT_EQ(error_line("qreg q[2];\nmeasure q[0] -> c[0];\n"), 2);
  EXPECT_EQ(error_line("qreg q[2];\nqreg r[2];\n"), 2);
  EXPECT_EQ(error_line("qreg q[2];\nh q;\n"), 2);
  EXPECT_EQ(error_line("qreg q[2];\ncx q[1],q[1];\n"), 2);
}

TEST(QasmTest, MissingFileIsReported) {
  EXPECT_THROW(load_qasm_file("/nonexistent/x.qasm"), std::runtime_error);
}

}  // namespace
}  // namespace qnetpart
