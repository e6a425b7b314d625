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
#include <utility>

#include "rng.hpp"
#include "states.hpp"

namespace nosplit {

// The converse protocol: an amplitude-only qubit and an equatorial
// phase-only qubit are merged into one qubit by a parity (ZZ) measurement,
// an XOR gate with the first qubit as control, and discarding the second
// qubit.

enum class Parity { even, odd };

struct ParityOutcome {
  Parity label;
  double probability;
  // Absent when the branch probability is below 1e-14 (post-measurement
  // state undefined).
  std::optional<PureState> post_state;
};

struct CombineResult {
  Parity outcome;
  PureState final_state;
};

// (cos(theta/2)|0> + sin(theta/2)|1>) ox (|0> + e^{i phi}|1>)/sqrt(2)
PureState combiner_input(const BlochAngles& angles);

// Projections onto span{|00>,|11>} (even) and span{|01>,|10>} (odd).
std::pair<ParityOutcome, ParityOutcome> parity_branches(const PureState& psi);

// CNOT with the first qubit as control.
PureState xor_gate(const PureState& psi);

// Sample a parity outcome, apply the XOR, check that the second qubit
// factors out (error otherwise: that would be an implementation bug, not a
// physical case) and discard it.
CombineResult run_combiner(const BlochAngles& angles, Rng& rng);

// Expected branch outputs: even keeps the phase on |1>, odd moves it to |0>.
PureState even_reference(const BlochAngles& angles);
PureState odd_reference(const BlochAngles& angles);

struct CombineStats {
  long n_even;
  long n_odd;
  // Minimum fidelity of observed branch outputs against the references;
  // 1.0 when a branch never occurred.
  double fidelity_even;
  double fidelity_odd;
};

CombineStats combiner_statistics(const BlochAngles& angles, long shots, Rng& rng);

}  // namespace nosplit
