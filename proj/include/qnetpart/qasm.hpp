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

#include <stdexcept>
#include <string>
#include <string_view>

#include "qnetpart/circuit.hpp"

namespace qnetpart {

class QasmError : public std::runtime_error {
 public:
  QasmError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses an OpenQASM 2.0 program over a single quantum register.
///
/// Accepted gates: u, u3, u1, rz, h, x, z, cx, cz, cp, cu1. Barriers are
/// ignored; measurement, resets, classical registers, conditionals and gate
/// definitions are rejected. The result is in the {U, CP} basis and scheduled
/// as soon as possible.
Circuit parse_qasm(std::string_view text);

Circuit load_qasm_file(const std::string& path);

}  // namespace qnetpart
