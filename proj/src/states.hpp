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

#include <array>
#include <vector>

#include "qmat.hpp"

namespace nosplit {

// Bloch-sphere coordinates of a qubit state
// cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>, theta in [0, pi], phi in [0, 2pi).
struct BlochAngles {
  BlochAngles(double theta_, double phi_);
  double theta;
  double phi;
};

// Canonicalize arbitrary real (theta, phi) onto the Bloch ranges. The wrapped
// angles describe the same physical state up to a global phase.
BlochAngles wrap_bloch(double theta, double phi);

// Normalized one- or two-qubit amplitude vector.
class PureState {
 public:
  explicit PureState(std::vector<cplx> amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const std::vector<cplx>& amplitudes() const { return amplitudes_; }
  const cplx& amplitude(int i) const { return amplitudes_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<cplx> amplitudes_;
};

// 2x2 Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix2 {
 public:
  explicit DensityMatrix2(CMatrix entries);
  const CMatrix& entries() const { return entries_; }

 private:
  CMatrix entries_;
};

enum class Subsystem { A, B };

struct SchmidtDecomp {
  double r0;  // >= r1 >= 0, r0^2 + r1^2 = 1
  double r1;
  std::array<PureState, 2> basis_a;
  std::array<PureState, 2> basis_b;
};

PureState bloch_state(const BlochAngles& angles);

// Outer product |psi><psi|.
CMatrix density(const PureState& psi);

// Partial trace of a two-qubit pure state over the complementary qubit,
// under the tensor index convention (qubit A = first factor).
DensityMatrix2 reduced(const PureState& psi, Subsystem keep);

// (1/2) sum |eigenvalues(rho - sigma)|, in [0, 1].
double trace_distance(const DensityMatrix2& rho, const DensityMatrix2& sigma);

// |<a|b>|^2, in [0, 1].
double fidelity_pure(const PureState& a, const PureState& b);

// Two-qubit Schmidt decomposition r0|0~0~> + r1|1~1~> with real nonnegative
// coefficients; phases are absorbed into the B basis.
SchmidtDecomp schmidt(const PureState& psi);

// Product of two states under the standard index convention.
PureState tensor_state(const PureState& a, const PureState& b);

}  // namespace nosplit
