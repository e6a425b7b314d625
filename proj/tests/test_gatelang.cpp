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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gatelang.hpp"
#include "splitcheck.hpp"
#include "test_util.hpp"

using namespace nosplit;
using nstest::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

int parse_error_line(const std::string& text) {
  try {
    parse_program(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

int parse_error_column(const std::string& text) {
  try {
    parse_program(text);
  } catch (const ParseError& e) {
    return e.column();
  }
  return -1;
}

}  // namespace

TEST_CASE("parse_program: basic programs") {
  const GateProgram p = parse_program("H 0\nCNOT 0 1\n");
  REQUIRE(p.instructions.size() == 2);
  CHECK(p.instructions[0].mnemonic == Mnemonic::H);
  CHECK(p.instructions[0].qubits == std::vector<int>{0});
  CHECK_FALSE(p.instructions[0].angle.has_value());
  CHECK(p.instructions[1].mnemonic == Mnemonic::CNOT);
  CHECK(p.instructions[1].qubits == std::vector<int>{0, 1});

  const GateProgram q = parse_program("RY 0 0.7853981634 # quarter");
  REQUIRE(q.instructions.size() == 1);
  REQUIRE(q.instructions[0].angle.has_value());
  CHECK(std::abs(*q.instructions[0].angle - kPi / 4.0) <= 1e-9);
}

TEST_CASE("parse_program: comments, blank lines, CRLF, tabs") {
  const GateProgram p =
      parse_program("# header comment\r\n\r\n\tX\t1   # flip\r\nSWAP 0 1\r\n");
  REQUIRE(p.instructions.size() == 2);
  CHECK(p.instructions[0].mnemonic == Mnemonic::X);
  CHECK(p.instructions[0].qubits == std::vector<int>{1});
  CHECK(p.instructions[1].mnemonic == Mnemonic::SWAP);
}

TEST_CASE("parse_program: angle literal forms") {
  const GateProgram p = parse_program("RX 0 -0.5\nRZ 1 2e-3\nPHASE 0 +1.25E2\n");
  REQUIRE(p.instructions.size() == 3);
  CHECK(*p.instructions[0].angle == -0.5);
  CHECK(*p.instructions[1].angle == 2e-3);
  CHECK(*p.instructions[2].angle == 125.0);
}

TEST_CASE("parse_program: error positions") {
  // duplicate qubit in a two-qubit gate
  CHECK(parse_error_line("CNOT 0 0") == 1);
  CHECK(parse_error_column("CNOT 0 0") == 8);

  // unknown mnemonic (case-sensitive)
  CHECK(parse_error_line("h 0") == 1);
  CHECK(parse_error_column("h 0") == 1);
  CHECK(parse_error_line("X 0\nFOO 1\n") == 2);

  // arity problems
  CHECK(parse_error_line("CNOT 0") == 1);
  CHECK(parse_error_line("X") == 1);
  CHECK(parse_error_line("X 0 1") == 1);  // extra token for angle-free gate

  // qubit index problems
  CHECK(parse_error_line("X 2") == 1);
  CHECK(parse_error_column("X 2") == 3);
  CHECK(parse_error_line("X q") == 1);

  // angle problems
  CHECK(parse_error_line("RX 0") == 1);
  CHECK(parse_error_line("RX 0 abc") == 1);
  CHECK(parse_error_line("RX 0 1.5x") == 1);
  CHECK(parse_error_line("RX 0 1e999") == 1);
  CHECK(parse_error_line("RX 0 nan") == 1);
  CHECK(parse_error_line("RX 0 1.5 2.5") == 1);
}

TEST_CASE("parse_program: error carries line/column in the message") {
  try {
    parse_program("X 0\nCNOT 1 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.code() == ErrorCode::parse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("compile_program: empty program is the identity") {
  CHECK(max_abs_diff(compile_program(parse_program("")), CMatrix::identity(4)) == 0.0);
  CHECK(max_abs_diff(compile_program(parse_program("# only a comment\n")),
                     CMatrix::identity(4)) == 0.0);
}

TEST_CASE("compile_program: CNOT matches the splitcheck gate") {
  const CMatrix u = compile_program(parse_program("CNOT 0 1\n"));
  CHECK(max_abs_diff(u, cnot_matrix()) == 0.0);
  const PureState w({cplx(1.0, 0.0), cplx(0.0, 0.0)});
  CHECK(std::abs(splitting_residual(u, w, AngleGrid()).total - 1.0) <= 1e-12);
}

TEST_CASE("compile_program: involution and composition order") {
  CHECK(max_abs_diff(compile_program(parse_program("X 0\nX 0\n")),
                     CMatrix::identity(4)) <= 1e-12);

  // first line applied first: compile(X 0; CNOT 0 1) = CNOT * (X ox I)
  const CMatrix composed = compile_program(parse_program("X 0\nCNOT 0 1\n"));
  const CMatrix x_first =
      cnot_matrix() * compile_program(parse_program("X 0\n"));
  CHECK(max_abs_diff(composed, x_first) <= 1e-12);
}

TEST_CASE("compile_program: gate definitions") {
  // S S = Z on either qubit
  CHECK(max_abs_diff(compile_program(parse_program("S 1\nS 1\n")),
                     compile_program(parse_program("Z 1\n"))) <= 1e-12);
  // T T = S
  CHECK(max_abs_diff(compile_program(parse_program("T 0\nT 0\n")),
                     compile_program(parse_program("S 0\n"))) <= 1e-12);
  // H Z H = X
  CHECK(max_abs_diff(compile_program(parse_program("H 0\nZ 0\nH 0\n")),
                     compile_program(parse_program("X 0\n"))) <= 1e-12);
  // RX(pi) = -i X
  const CMatrix rx = compile_program(parse_program("RX 0 3.14159265358979323846\n"));
  const cplx mi(0.0, -1.0);
  CHECK(max_abs_diff(rx, mi * compile_program(parse_program("X 0\n"))) <= 1e-12);
  // PHASE(pi/2) = S
  CHECK(max_abs_diff(compile_program(parse_program("PHASE 1 1.5707963267948966\n")),
                     compile_program(parse_program("S 1\n"))) <= 1e-12);
  // CZ is symmetric under operand order
  CHECK(max_abs_diff(compile_program(parse_program("CZ 0 1\n")),
                     compile_program(parse_program("CZ 1 0\n"))) == 0.0);
  // CNOT with the second qubit as control: |01> -> |11>
  const CMatrix rev = compile_program(parse_program("CNOT 1 0\n"));
  CHECK(std::abs(rev(3, 1) - cplx(1.0, 0.0)) == 0.0);
  CHECK(std::abs(rev(1, 3) - cplx(1.0, 0.0)) == 0.0);
  // SWAP conjugation moves a gate to the other qubit
  CHECK(max_abs_diff(compile_program(parse_program("SWAP 0 1\nX 0\nSWAP 0 1\n")),
                     compile_program(parse_program("X 1\n"))) <= 1e-12);
}

TEST_CASE("round-trip: format then reparse yields identical instructions") {
  const std::string src =
      "H 0\nRY 1 0.125\nCNOT 1 0\nPHASE 0 -2.75e-1\nSWAP 0 1\nT 1\nRZ 0 "
      "3.14159265358979312\n";
  const GateProgram p = parse_program(src);
  const GateProgram q = parse_program(format_program(p));
  REQUIRE(p.instructions.size() == q.instructions.size());
  for (std::size_t k = 0; k < p.instructions.size(); ++k) {
    CHECK(p.instructions[k].mnemonic == q.instructions[k].mnemonic);
    CHECK(p.instructions[k].qubits == q.instructions[k].qubits);
    CHECK(p.instructions[k].angle == q.instructions[k].angle);
  }
}

TEST_CASE("fuzz: random programs compile to unitaries") {
  nstest::Rng rng(70);
  const Mnemonic singles[] = {Mnemonic::I, Mnemonic::X,  Mnemonic::Y,  Mnemonic::Z,
                              Mnemonic::H, Mnemonic::S,  Mnemonic::T,  Mnemonic::RX,
                              Mnemonic::RY, Mnemonic::RZ, Mnemonic::PHASE};
  const Mnemonic doubles[] = {Mnemonic::CNOT, Mnemonic::CZ, Mnemonic::SWAP};

  for (int it = 0; it < 60; ++it) {
    GateProgram prog;
    const int len = 1 + static_cast<int>(rng.uniform01() * 64.0);
    for (int k = 0; k < len; ++k) {
      GateInstruction inst;
      if (rng.uniform01() < 0.7) {
        inst.mnemonic = singles[static_cast<int>(rng.uniform01() * 11.0) % 11];
        inst.qubits = {rng.uniform01() < 0.5 ? 0 : 1};
        if (inst.mnemonic == Mnemonic::RX || inst.mnemonic == Mnemonic::RY ||
            inst.mnemonic == Mnemonic::RZ || inst.mnemonic == Mnemonic::PHASE)
          inst.angle = rng.uniform(-8.0, 8.0);
      } else {
        inst.mnemonic = doubles[static_cast<int>(rng.uniform01() * 3.0) % 3];
        const int first = rng.uniform01() < 0.5 ? 0 : 1;
        inst.qubits = {first, 1 - first};
      }
      prog.instructions.push_back(std::move(inst));
    }
    const GateProgram reparsed = parse_program(format_program(prog));
    REQUIRE(reparsed.instructions.size() == prog.instructions.size());
    CHECK(is_unitary(compile_program(reparsed), 1e-10));
  }
}
