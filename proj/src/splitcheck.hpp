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

#include "states.hpp"

namespace nosplit {

// Discretization of "for all theta, phi": uniform theta samples over [0, pi]
// including both endpoints, uniform phi samples over [0, 2pi).
struct AngleGrid {
  AngleGrid();  // default 13 x 16
  AngleGrid(int theta_steps, int phi_steps);
  AngleGrid(std::vector<double> thetas_, std::vector<double> phis_);

  std::vector<double> thetas;
  std::vector<double> phis;
};

// The quintuple extracted by the splitting analysis: Schmidt coefficients
// (r0, r1) of U(|1> ox w) and the expansion coefficients (alpha, c, d) of
// U(|0> ox w) in the Schmidt product basis.
struct ProofCoefficients {
  ProofCoefficients(double r0_, double r1_, cplx alpha_, cplx c_, cplx d_);

  double r0;
  double r1;
  cplx alpha;
  cplx c;
  cplx d;
  // r1 below 1e-8: the second Schmidt basis vector is convention-dependent,
  // so c and d are reported under the canonical completion.
  bool degenerate;
};

// The seven residual moduli of the splitting constraint system, in order:
// |d* r0|, |c r1|, |c* r0|, |d r1|, |alpha r0 r1|,
// ||alpha|^2 r1^2 + |d|^2 - r0^2|, |c* alpha r1 - d alpha* r0|.
using ConstraintResiduals = std::array<double, 7>;

// Failure of the split conditions on a grid: v_a is the phi-dependence of the
// A marginal, v_b the theta-dependence of the B marginal, total their sum.
struct SplitViolation {
  double v_a;
  double v_b;
  double total;
};

// CNOT with qubit A as control, in the standard basis order 00,01,10,11.
CMatrix cnot_matrix();

// U (|v(theta,phi)> ox |w>), for 4x4 unitary U (admitted at tolerance 1e-8).
PureState apply_split(const CMatrix& u, const BlochAngles& angles, const PureState& w);

// Max over theta of the max over phi pairs of D(rho_A(theta,phi1), rho_A(theta,phi2)).
double violation_a(const CMatrix& u, const PureState& w, const AngleGrid& grid);

// Mirror image: max over phi of the max over theta pairs of D(rho_B(..)).
double violation_b(const CMatrix& u, const PureState& w, const AngleGrid& grid);

SplitViolation splitting_residual(const CMatrix& u, const PureState& w,
                                  const AngleGrid& grid);

// Max over the grid of the second Schmidt coefficient of the output state;
// zero iff every output is a product state.
double output_entanglement(const CMatrix& u, const PureState& w, const AngleGrid& grid);

ProofCoefficients proof_coefficients(const CMatrix& u, const PureState& w);

ConstraintResiduals constraint_residuals(const ProofCoefficients& pc);

struct CnotDemo {
  PureState psi;
  DensityMatrix2 rho_a;
  DensityMatrix2 rho_b;
};

// CNOT applied to |v(theta,phi)> ox |0>; both marginals come out
// diag(cos^2(theta/2), sin^2(theta/2)) independent of phi.
CnotDemo cnot_demo(const BlochAngles& angles);

}  // namespace nosplit
