// Copyright 2026 The nosplit developers
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

#include "gatelang.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

namespace nosplit {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based within the line
};

struct MnemonicInfo {
  Mnemonic mnemonic;
  int arity;        // number of qubit operands
  bool needs_angle;
};

const std::map<std::string, MnemonicInfo, std::less<>>& mnemonic_table() {
  static const std::map<std::string, MnemonicInfo, std::less<>> table = {
      {"I", {Mnemonic::I, 1, false}},      {"X", {Mnemonic::X, 1, false}},
      {"Y", {Mnemonic::Y, 1, false}},      {"Z", {Mnemonic::Z, 1, false}},
      {"H", {Mnemonic::H, 1, false}},      {"S", {Mnemonic::S, 1, false}},
      {"T", {Mnemonic::T, 1, false}},      {"RX", {Mnemonic::RX, 1, true}},
      {"RY", {Mnemonic::RY, 1, true}},     {"RZ", {Mnemonic::RZ, 1, true}},
      {"PHASE", {Mnemonic::PHASE, 1, true}}, {"CNOT", {Mnemonic::CNOT, 2, false}},
      {"CZ", {Mnemonic::CZ, 2, false}},    {"SWAP", {Mnemonic::SWAP, 2, false}},
  };
  return table;
}

std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
    tokens.push_back({std::string(line.substr(start, i - start)),
                      static_cast<int>(start) + 1});
  }
  return tokens;
}

int parse_qubit(const Token& tok, int line_no) {
  bool all_digits = !tok.text.empty();
  for (char ch : tok.text)
    if (ch < '0' || ch > '9') all_digits = false;
  if (!all_digits)
    throw ParseError(line_no, tok.column, "malformed qubit index '" + tok.text + "'");
  if (tok.text != "0" && tok.text != "1")
    throw ParseError(line_no, tok.column,
                     "qubit index '" + tok.text + "' out of range (expected 0 or 1)");
  return tok.text[0] - '0';
}

double parse_angle(const Token& tok, int line_no) {
  const char* begin = tok.text.data();
  const char* end = begin + tok.text.size();
  // from_chars does not take a leading plus sign; the grammar does.
  if (begin != end && *begin == '+') ++begin;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (begin == end) ec = std::errc::invalid_argument;
  if (ec == std::errc::result_out_of_range)
    throw ParseError(line_no, tok.column, "angle '" + tok.text + "' is out of range");
  if (ec != std::errc() || ptr != end)
    throw ParseError(line_no, tok.column, "malformed angle '" + tok.text + "'");
  if (!std::isfinite(value))
    throw ParseError(line_no, tok.column, "angle '" + tok.text + "' is not finite");
  return value;
}

CMatrix single_qubit_gate(Mnemonic m, std::optional<double> angle) {
  const cplx i(0.0, 1.0);
  CMatrix g(2, 2);
  switch (m) {
    case Mnemonic::I:
      return CMatrix::identity(2);
    case Mnemonic::X:
      g(0, 1) = 1.0;
      g(1, 0) = 1.0;
      return g;
    case Mnemonic::Y:
      g(0, 1) = -i;
      g(1, 0) = i;
      return g;
    case Mnemonic::Z:
      g(0, 0) = 1.0;
      g(1, 1) = -1.0;
      return g;
    case Mnemonic::H: {
      const double r = 1.0 / std::sqrt(2.0);
      g(0, 0) = r;
      g(0, 1) = r;
      g(1, 0) = r;
      g(1, 1) = -r;
      return g;
    }
    case Mnemonic::S:
      g(0, 0) = 1.0;
      g(1, 1) = i;
      return g;
    case Mnemonic::T:
      g(0, 0) = 1.0;
      g(1, 1) = std::exp(i * cplx(std::numbers::pi / 4.0, 0.0));
      return g;
    case Mnemonic::RX: {
      const double a = *angle;
      g(0, 0) = std::cos(a / 2.0);
      g(0, 1) = -i * std::sin(a / 2.0);
      g(1, 0) = -i * std::sin(a / 2.0);
      g(1, 1) = std::cos(a / 2.0);
      return g;
    }
    case Mnemonic::RY: {
      const double a = *angle;
      g(0, 0) = std::cos(a / 2.0);
      g(0, 1) = -std::sin(a / 2.0);
      g(1, 0) = std::sin(a / 2.0);
      g(1, 1) = std::cos(a / 2.0);
      return g;
    }
    case Mnemonic::RZ: {
      const double a = *angle;
      g(0, 0) = std::exp(-i * cplx(a / 2.0, 0.0));
      g(1, 1) = std::exp(i * cplx(a / 2.0, 0.0));
      return g;
    }
    case Mnemonic::PHASE: {
      const double a = *angle;
      g(0, 0) = 1.0;
      g(1, 1) = std::exp(i * cplx(a, 0.0));
      return g;
    }
    default:
      throw Error(ErrorCode::invalid_argument, "single_qubit_gate: two-qubit mnemonic");
  }
}

CMatrix two_qubit_gate(Mnemonic m, int q0, int q1) {
  CMatrix g(4, 4);
  auto idx = [](int a, int b) { return 2 * a + b; };
  switch (m) {
    case Mnemonic::CNOT:
      // q0 is the control, q1 the target.
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          int bits[2] = {a, b};
          int out[2] = {a, b};
          if (bits[q0] == 1) out[q1] ^= 1;
          g(idx(out[0], out[1]), idx(a, b)) = 1.0;
        }
      return g;
    case Mnemonic::CZ:
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          g(idx(a, b), idx(a, b)) = (a == 1 && b == 1) ? -1.0 : 1.0;
      return g;
    case Mnemonic::SWAP:
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) g(idx(b, a), idx(a, b)) = 1.0;
      return g;
    default:
      throw Error(ErrorCode::invalid_argument, "two_qubit_gate: single-qubit mnemonic");
  }
}

CMatrix lift_instruction(const GateInstruction& inst) {
  if (inst.qubits.size() == 1) {
    const CMatrix g = single_qubit_gate(inst.mnemonic, inst.angle);
    return inst.qubits[0] == 0 ? tensor(g, CMatrix::identity(2))
                               : tensor(CMatrix::identity(2), g);
  }
  return two_qubit_gate(inst.mnemonic, inst.qubits[0], inst.qubits[1]);
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(ErrorCode::parse, "line " + std::to_string(line) + ", column " +
                                  std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

GateProgram parse_program(std::string_view text, std::string source_name) {
  GateProgram prog;
  prog.source_name = std::move(source_name);

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;

    const std::vector<Token> tokens = tokenize_line(line);
    if (!tokens.empty()) {
      const auto& table = mnemonic_table();
      auto it = table.find(tokens[0].text);
      if (it == table.end())
        throw ParseError(line_no, tokens[0].column,
                         "unknown mnemonic '" + tokens[0].text + "'");
      const MnemonicInfo& info = it->second;
      const int end_column = static_cast<int>(line.size()) + 1;
      const std::size_t expected = 1 + info.arity + (info.needs_angle ? 1 : 0);

      GateInstruction inst;
      inst.mnemonic = info.mnemonic;
      std::size_t t = 1;
      for (int q = 0; q < info.arity; ++q, ++t) {
        if (t >= tokens.size())
          throw ParseError(line_no, end_column,
                           std::string("missing qubit operand for '") + tokens[0].text +
                               "'");
        int qi = parse_qubit(tokens[t], line_no);
        if (info.arity == 2 && q == 1 && qi == inst.qubits[0])
          throw ParseError(line_no, tokens[t].column,
                           "duplicate qubit index in two-qubit gate");
        inst.qubits.push_back(qi);
      }
      if (info.needs_angle) {
        if (t >= tokens.size())
          throw ParseError(line_no, end_column,
                           std::string("missing angle for '") + tokens[0].text + "'");
        inst.angle = parse_angle(tokens[t], line_no);
        ++t;
      }
      if (tokens.size() > expected)
        throw ParseError(line_no, tokens[expected].column,
                         info.needs_angle
                             ? "extra token after angle"
                             : "unexpected token '" + tokens[expected].text +
                                   "' (gate takes no angle)");
      prog.instructions.push_back(std::move(inst));
    }

    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return prog;
}

CMatrix compile_program(const GateProgram& prog) {
  CMatrix u = CMatrix::identity(4);
  for (const auto& inst : prog.instructions) u = lift_instruction(inst) * u;
  require(is_unitary(u, 1e-10), ErrorCode::numerical,
          "compile_program: compiled matrix failed the unitarity check");
  return u;
}

std::string format_program(const GateProgram& prog) {
  std::ostringstream out;
  for (const auto& inst : prog.instructions) {
    out << mnemonic_name(inst.mnemonic);
    for (int q : inst.qubits) out << ' ' << q;
    if (inst.angle) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", *inst.angle);
      out << ' ' << buf;
    }
    out << '\n';
  }
  return out.str();
}

const char* mnemonic_name(Mnemonic m) {
  switch (m) {
    case Mnemonic::I: return "I";
    case Mnemonic::X: return "X";
    case Mnemonic::Y: return "Y";
    case Mnemonic::Z: return "Z";
    case Mnemonic::H: return "H";
    case Mnemonic::S: return "S";
    case Mnemonic::T: return "T";
    case Mnemonic::RX: return "RX";
    case Mnemonic::RY: return "RY";
    case Mnemonic::RZ: return "RZ";
    case Mnemonic::PHASE: return "PHASE";
    case Mnemonic::CNOT: return "CNOT";
    case Mnemonic::CZ: return "CZ";
    case Mnemonic::SWAP: return "SWAP";
  }
  return "?";
}

}  // namespace nosplit
