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

#include "combiner.hpp"

#include <algorithm>
#include <cmath>

namespace nosplit {

namespace {

constexpr double kUndefinedBranch = 1e-14;

std::optional<PureState> project(const PureState& psi, bool even, double probability) {
  if (probability < kUndefinedBranch) return std::nullopt;
  std::vector<cplx> amps(4, cplx(0.0, 0.0));
  const double scale = 1.0 / std::sqrt(probability);
  if (even) {
    amps[0] = psi.amplitude(0) * scale;
    amps[3] = psi.amplitude(3) * scale;
  } else {
    amps[1] = psi.amplitude(1) * scale;
    amps[2] = psi.amplitude(2) * scale;
  }
  return PureState(std::move(amps));
}

}  // namespace

PureState combiner_input(const BlochAngles& angles) {
  const double c = std::cos(0.5 * angles.theta);
  const double s = std::sin(0.5 * angles.theta);
  const cplx ph(std::cos(angles.phi), std::sin(angles.phi));
  const double r = 1.0 / std::sqrt(2.0);
  return PureState({r * c, r * c * ph, r * s, r * s * ph});
}

std::pair<ParityOutcome, ParityOutcome> parity_branches(const PureState& psi) {
  require(psi.dim() == 4, ErrorCode::dimension_mismatch,
          "parity_branches: two-qubit state required");
  const double p_even = std::norm(psi.amplitude(0)) + std::norm(psi.amplitude(3));
  const double p_odd = std::norm(psi.amplitude(1)) + std::norm(psi.amplitude(2));
  ParityOutcome even{Parity::even, p_even, project(psi, true, p_even)};
  ParityOutcome odd{Parity::odd, p_odd, project(psi, false, p_odd)};
  return {std::move(even), std::move(odd)};
}

PureState xor_gate(const PureState& psi) {
  require(psi.dim() == 4, ErrorCode::dimension_mismatch,
          "xor_gate: two-qubit state required");
  return PureState(
      {psi.amplitude(0), psi.amplitude(1), psi.amplitude(3), psi.amplitude(2)});
}

CombineResult run_combiner(const BlochAngles& angles, Rng& rng) {
  const PureState input = combiner_input(angles);
  auto [even, odd] = parity_branches(input);

  const bool take_even = rng.uniform01() < even.probability;
  const ParityOutcome& branch = take_even ? even : odd;
  require(branch.post_state.has_value(), ErrorCode::numerical,
          "run_combiner: sampled an undefined branch");

  const PureState after_xor = xor_gate(*branch.post_state);
  const SchmidtDecomp sd = schmidt(after_xor);
  require(sd.r1 < 1e-10, ErrorCode::entangled_residue,
          "run_combiner: second qubit failed to disentangle before discard");
  return CombineResult{take_even ? Parity::even : Parity::odd, sd.basis_a[0]};
}

PureState even_reference(const BlochAngles& angles) {
  return bloch_state(angles);
}

PureState odd_reference(const BlochAngles& angles) {
  const double c = std::cos(0.5 * angles.theta);
  const double s = std::sin(0.5 * angles.theta);
  const cplx ph(std::cos(angles.phi), std::sin(angles.phi));
  return PureState({c * ph, cplx(s, 0.0)});
}

CombineStats combiner_statistics(const BlochAngles& angles, long shots, Rng& rng) {
  require(shots >= 1, ErrorCode::invalid_argument,
          "combiner_statistics: shots must be >= 1");
  const PureState ref_even = even_reference(angles);
  const PureState ref_odd = odd_reference(angles);
  CombineStats stats{0, 0, 1.0, 1.0};
  for (long s = 0; s < shots; ++s) {
    const CombineResult r = run_combiner(angles, rng);
    if (r.outcome == Parity::even) {
      ++stats.n_even;
      stats.fidelity_even =
          std::min(stats.fidelity_even, fidelity_pure(ref_even, r.final_state));
    } else {
      ++stats.n_odd;
      stats.fidelity_odd =
          std::min(stats.fidelity_odd, fidelity_pure(ref_odd, r.final_state));
    }
  }
  return stats;
}

}  // namespace nosplit
