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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmat.hpp"

namespace nosplit {

// Line-oriented two-qubit gate sequence format:
//   - one instruction per line, tokens separated by runs of spaces/tabs
//   - `#` starts a comment to end of line; blank lines are skipped
//   - mnemonics are case-sensitive uppercase
//   - qubit indices are decimal 0 or 1; two-qubit gates need distinct indices
//   - RX/RY/RZ/PHASE take one trailing angle in radians (decimal literal,
//     optional sign and exponent); other gates take none
//   - the first qubit of CNOT is the control; line order is application order
// Rotations follow exp(-i a sigma/2); PHASE(a) = diag(1, e^{ia}).
enum class Mnemonic { I, X, Y, Z, H, S, T, RX, RY, RZ, PHASE, CNOT, CZ, SWAP };

struct GateInstruction {
  Mnemonic mnemonic;
  std::vector<int> qubits;
  std::optional<double> angle;
};

struct GateProgram {
  std::vector<GateInstruction> instructions;
  std::string source_name;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

GateProgram parse_program(std::string_view text, std::string source_name = "<memory>");

// Compose the program into a single 4x4 unitary; line order is the order of
// application to the state, so the matrix product runs last line leftmost.
CMatrix compile_program(const GateProgram& prog);

// Canonical text form; parsing it back yields the identical instruction list.
std::string format_program(const GateProgram& prog);

const char* mnemonic_name(Mnemonic m);

}  // namespace nosplit
