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

#include "qnetpart/qasm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

namespace qnetpart {

namespace {

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  int line = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), 0.0, line});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) {
        ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      const std::string text(src.substr(i, j - i));
      Token tok{Tok::Number, text, 0.0, line};
      try {
        std::size_t used = 0;
        tok.number = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
      } catch (const std::exception&) {
        throw QasmError(line, "malformed number '" + text + "'");
      }
      out.push_back(tok);
      i = j;
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') {
        throw QasmError(line, "unterminated string");
      }
      out.push_back({Tok::String, std::string(src.substr(i + 1, j - i - 1)), 0.0, line});
      i = j + 1;
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Symbol, "->", 0.0, line});
      i += 2;
    } else if (std::string_view("();,[]{}+-*/^").find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), 0.0, line});
      ++i;
    } else {
      throw QasmError(line, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", 0.0, line});
  return out;
}

struct GateSpec {
  const char* name;
  int params;
  int qubits;
};

constexpr GateSpec kGates[] = {
    {"u", 3, 1},  {"u3", 3, 1}, {"u1", 1, 1}, {"rz", 1, 1},
    {"h", 0, 1},  {"x", 0, 1},  {"z", 0, 1},  {"cx", 0, 2},
    {"cz", 0, 2}, {"cp", 1, 2}, {"cu1", 1, 2},
};

const GateSpec* find_gate(const std::string& name) {
  for (const GateSpec& spec : kGates) {
    if (name == spec.name) return &spec;
  }
  return nullptr;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Circuit parse() {
    std::optional<Circuit> circuit;
    while (peek().kind != Tok::End) {
      const Token head = next();
      if (head.kind != Tok::Ident) {
        throw QasmError(head.line, "expected a statement, got '" + head.text + "'");
      }
      const std::string& kw = head.text;
      if (kw == "OPENQASM") {
        const Token version = next();
        if (version.kind != Tok::Number || version.text.rfind("2", 0) != 0) {
          throw QasmError(version.line, "only OpenQASM 2.x is supported");
        }
        expect(";");
      } else if (kw == "include") {
        const Token file = next();
        if (file.kind != Tok::String) {
          throw QasmError(file.line, "include expects a quoted file name");
        }
        expect(";");
      } else if (kw == "qreg") {
        if (circuit) {
          throw QasmError(head.line, "only a single quantum register is supported");
        }
        reg_name_ = ident("register name");
        expect("[");
        const int size = integer();
        expect("]");
        expect(";");
        if (size < 1) throw QasmError(head.line, "register size must be positive");
        circuit.emplace(size);
      } else if (kw == "creg" || kw == "measure" || kw == "reset" ||
                 kw == "if" || kw == "gate" || kw == "opaque") {
        throw QasmError(head.line, "unsupported construct '" + kw + "'");
      } else if (kw == "barrier") {
        while (peek().kind != Tok::End && !is(peek(), ";")) next();
        expect(";");
      } else {
        if (!circuit) {
          throw QasmError(head.line, "gate '" + kw + "' before qreg declaration");
        }
        gate_statement(head, *circuit);
      }
    }
    if (!circuit) {
      throw QasmError(toks_.back().line, "no quantum register declared");
    }
    return rewrite_to_basis(*circuit);
  }

 private:
  void gate_statement(const Token& head, Circuit& circuit) {
    const GateSpec* spec = find_gate(head.text);
    if (spec == nullptr) {
      throw QasmError(head.line, "unknown gate '" + head.text + "'");
    }
    std::vector<double> params;
    if (is(peek(), "(")) {
      next();
      if (!is(peek(), ")")) {
        params.push_back(expression());
        while (is(peek(), ",")) {
          next();
          params.push_back(expression());
        }
      }
      expect(")");
    }
    if (static_cast<int>(params.size()) != spec->params) {
      throw QasmError(head.line, "gate '" + head.text + "' expects " +
                                     std::to_string(spec->params) + " parameter(s)");
    }
    std::vector<int> qubits;
    qubits.push_back(qubit_ref(circuit));
    while (is(peek(), ",")) {
      next();
      qubits.push_back(qubit_ref(circuit));
    }
    expect(";");
    if (static_cast<int>(qubits.size()) != spec->qubits) {
      throw QasmError(head.line, "gate '" + head.text + "' expects " +
                                     std::to_string(spec->qubits) + " qubit(s)");
    }
    if (qubits.size() == 2 && qubits[0] == qubits[1]) {
      throw QasmError(head.line, "gate '" + head.text + "' repeats a qubit");
    }

    const std::string& name = head.text;
    Gate gate;
    if (name == "u" || name == "u3") {
      gate = Gate::u(qubits[0], params[0], params[1], params[2]);
    } else if (name == "u1" || name == "rz") {
      gate = Gate::alias(GateKind::RZ, qubits, params[0]);
    } else if (name == "h") {
      gate = Gate::alias(GateKind::H, qubits);
    } else if (name == "x") {
      gate = Gate::alias(GateKind::X, qubits);
    } else if (name == "z") {
      gate = Gate::alias(GateKind::Z, qubits);
    } else if (name == "cx") {
      gate = Gate::alias(GateKind::CX, qubits);
    } else if (name == "cz") {
      gate = Gate::alias(GateKind::CZ, qubits);
    } else {
      gate = Gate::cp(qubits[0], qubits[1], params[0]);
    }
    circuit.append(gate);
  }

  int qubit_ref(const Circuit& circuit) {
    const Token name = next();
    if (name.kind != Tok::Ident) {
      throw QasmError(name.line, "expected a qubit reference");
    }
    if (name.text != reg_name_) {
      throw QasmError(name.line, "unknown register '" + name.text + "'");
    }
    if (!is(peek(), "[")) {
      throw QasmError(name.line, "register broadcast is not supported");
    }
    next();
    const int index = integer();
    expect("]");
    if (index < 0 || index >= circuit.num_qubits()) {
      throw QasmError(name.line, "qubit index " + std::to_string(index) +
                                     " out of range for register of size " +
                                     std::to_string(circuit.num_qubits()));
    }
    return index;
  }

  // expr := term (('+'|'-') term)*
  double expression() {
    double value = term();
    while (is(peek(), "+") || is(peek(), "-")) {
      const bool plus = next().text == "+";
      const double rhs = term();
      value = plus ? value + rhs : value - rhs;
    }
    return value;
  }

  double term() {
    double value = power();
    while (is(peek(), "*") || is(peek(), "/")) {
      const Token op = next();
      const double rhs = power();
      if (op.text == "/" && rhs == 0.0) throw QasmError(op.line, "division by zero");
      value = op.text == "*" ? value * rhs : value / rhs;
    }
    return value;
  }

  double power() {
    const double base = unary();
    if (is(peek(), "^")) {
      next();
      return std::pow(base, power());
    }
    return base;
  }

  double unary() {
    if (is(peek(), "-")) {
      next();
      return -unary();
    }
    if (is(peek(), "+")) {
      next();
      return unary();
    }
    return primary();
  }

  double primary() {
    const Token tok = next();
    if (tok.kind == Tok::Number) return tok.number;
    if (tok.kind == Tok::Ident && tok.text == "pi") return std::numbers::pi;
    if (is(tok, "(")) {
      const double value = expression();
      expect(")");
      return value;
    }
    throw QasmError(tok.line, "malformed expression near '" + tok.text + "'");
  }

  int integer() {
    const Token tok = next();
    if (tok.kind != Tok::Number || tok.text.find_first_not_of("0123456789") != std::string::npos) {
      throw QasmError(tok.line, "expected a non-negative integer");
    }
    return std::stoi(tok.text);
  }

  std::string ident(const char* what) {
    const Token tok = next();
    if (tok.kind != Tok::Ident) {
      throw QasmError(tok.line, std::string("expected ") + what);
    }
    return tok.text;
  }

  void expect(const char* symbol) {
    const Token tok = next();
    if (!is(tok, symbol)) {
      throw QasmError(tok.line, std::string("expected '") + symbol + "', got '" +
                                    (tok.kind == Tok::End ? "end of input" : tok.text) + "'");
    }
  }

  static bool is(const Token& tok, const char* symbol) {
    return tok.kind == Tok::Symbol && tok.text == symbol;
  }
  const Token& peek() const { return toks_[pos_]; }
  Token next() {
    const Token& tok = toks_[pos_];
    if (tok.kind != Tok::End) ++pos_;
    return tok;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string reg_name_;
};

}  // namespace

Circuit parse_qasm(std::string_view text) {
  return Parser(tokenize(text)).parse();
}

Circuit load_qasm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_qasm(buffer.str());
}

}  // namespace qnetpart
