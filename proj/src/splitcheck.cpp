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

#include "splitcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nosplit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unitarity admission tolerance: looser than construction tolerances so that
// compiled gate programs and optimizer outputs pass without cleanup.
constexpr double kUnitaryTol = 1e-8;

void require_splitter(const CMatrix& u) {
  require(u.rows() == 4 && u.cols() == 4, ErrorCode::invalid_argument,
          "splitcheck: 4x4 unitary required");
  require(is_unitary(u, kUnitaryTol), ErrorCode::not_unitary,
          "splitcheck: matrix is not unitary within 1e-8");
}

// Unchecked application path used inside grid loops after the unitary has
// been validated once.
PureState apply_unchecked(const CMatrix& u, const BlochAngles& angles,
                          const PureState& w) {
  const PureState input = tensor_state(bloch_state(angles), w);
  std::vector<cplx> out = u.apply(input.amplitudes());
  double nrm = 0.0;
  for (const auto& z : out) nrm += std::norm(z);
  nrm = std::sqrt(nrm);
  for (auto& z : out) z /= nrm;
  return PureState(std::move(out));
}

void check_grid_axis(const std::vector<double>& v, double lo, double hi,
                     bool open_upper, const char* name) {
  require(!v.empty(), ErrorCode::invalid_argument,
          std::string("AngleGrid: empty ") + name + " axis");
  double prev = lo;
  bool first = true;
  for (double x : v) {
    require(std::isfinite(x), ErrorCode::non_finite, "AngleGrid: non-finite sample");
    require(x >= lo && (open_upper ? x < hi : x <= hi), ErrorCode::invalid_argument,
            std::string("AngleGrid: ") + name + " sample out of bounds");
    require(first || x >= prev, ErrorCode::invalid_argument,
            std::string("AngleGrid: ") + name + " samples not sorted");
    prev = x;
    first = false;
  }
}

}  // namespace

AngleGrid::AngleGrid() : AngleGrid(13, 16) {}

AngleGrid::AngleGrid(int theta_steps, int phi_steps) {
  require(theta_steps >= 1 && phi_steps >= 1, ErrorCode::invalid_argument,
          "AngleGrid: step counts must be positive");
  thetas.reserve(theta_steps);
  if (theta_steps == 1) {
    thetas.push_back(0.0);
  } else {
    for (int i = 0; i < theta_steps; ++i)
      thetas.push_back(kPi * static_cast<double>(i) / (theta_steps - 1));
    thetas.back() = kPi;
  }
  phis.reserve(phi_steps);
  for (int k = 0; k < phi_steps; ++k)
    phis.push_back(kTwoPi * static_cast<double>(k) / phi_steps);
}

AngleGrid::AngleGrid(std::vector<double> thetas_, std::vector<double> phis_)
    : thetas(std::move(thetas_)), phis(std::move(phis_)) {
  check_grid_axis(thetas, 0.0, kPi, false, "theta");
  check_grid_axis(phis, 0.0, kTwoPi, true, "phi");
}

ProofCoefficients::ProofCoefficients(double r0_, double r1_, cplx alpha_, cplx c_,
                                     cplx d_)
    : r0(r0_), r1(r1_), alpha(alpha_), c(c_), d(d_), degenerate(r1_ < 1e-8) {
  require(std::isfinite(r0) && std::isfinite(r1), ErrorCode::non_finite,
          "ProofCoefficients: non-finite Schmidt coefficient");
  require(r0 >= r1 && r1 >= 0.0, ErrorCode::invalid_argument,
          "ProofCoefficients: Schmidt coefficients must satisfy r0 >= r1 >= 0");
  require(std::abs(r0 * r0 + r1 * r1 - 1.0) <= 1e-10, ErrorCode::invalid_argument,
          "ProofCoefficients: r0^2 + r1^2 must be 1");
  const double total = std::norm(alpha) + std::norm(c) + std::norm(d);
  require(std::isfinite(total), ErrorCode::non_finite,
          "ProofCoefficients: non-finite coefficient");
  require(std::abs(total - 1.0) <= 1e-8, ErrorCode::invalid_argument,
          "ProofCoefficients: |alpha|^2 + |c|^2 + |d|^2 must be 1");
}

CMatrix cnot_matrix() {
  CMatrix u(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 3) = 1.0;
  u(3, 2) = 1.0;
  return u;
}

PureState apply_split(const CMatrix& u, const BlochAngles& angles, const PureState& w) {
  require_splitter(u);
  require(w.dim() == 2, ErrorCode::dimension_mismatch,
          "apply_split: one-qubit ancilla required");
  return apply_unchecked(u, angles, w);
}

double violation_a(const CMatrix& u, const PureState& w, const AngleGrid& grid) {
  require_splitter(u);
  double worst = 0.0;
  std::vector<DensityMatrix2> rhos;
  for (double theta : grid.thetas) {
    rhos.clear();
    rhos.reserve(grid.phis.size());
    for (double phi : grid.phis)
      rhos.push_back(reduced(apply_unchecked(u, BlochAngles(theta, phi), w), Subsystem::A));
    for (std::size_t i = 0; i < rhos.size(); ++i)
      for (std::size_t j = i + 1; j < rhos.size(); ++j)
        worst = std::max(worst, trace_distance(rhos[i], rhos[j]));
  }
  return worst;
}

double violation_b(const CMatrix& u, const PureState& w, const AngleGrid& grid) {
  require_splitter(u);
  double worst = 0.0;
  std::vector<DensityMatrix2> rhos;
  for (double phi : grid.phis) {
    rhos.clear();
    rhos.reserve(grid.thetas.size());
    for (double theta : grid.thetas)
      rhos.push_back(reduced(apply_unchecked(u, BlochAngles(theta, phi), w), Subsystem::B));
    for (std::size_t i = 0; i < rhos.size(); ++i)
      for (std::size_t j = i + 1; j < rhos.size(); ++j)
        worst = std::max(worst, trace_distance(rhos[i], rhos[j]));
  }
  return worst;
}

SplitViolation splitting_residual(const CMatrix& u, const PureState& w,
                                  const AngleGrid& grid) {
  const double va = violation_a(u, w, grid);
  const double vb = violation_b(u, w, grid);
  return SplitViolation{va, vb, va + vb};
}

double output_entanglement(const CMatrix& u, const PureState& w, const AngleGrid& grid) {
  require_splitter(u);
  double worst = 0.0;
  for (double theta : grid.thetas)
    for (double phi : grid.phis)
      worst = std::max(worst, schmidt(apply_unchecked(u, BlochAngles(theta, phi), w)).r1);
  return worst;
}

ProofCoefficients proof_coefficients(const CMatrix& u, const PureState& w) {
  require_splitter(u);
  require(w.dim() == 2, ErrorCode::dimension_mismatch,
          "proof_coefficients: one-qubit ancilla required");

  const PureState ket0({cplx(1.0, 0.0), cplx(0.0, 0.0)});
  const PureState ket1({cplx(0.0, 0.0), cplx(1.0, 0.0)});
  const PureState psi1 = PureState(u.apply(tensor_state(ket1, w).amplitudes()));
  const PureState psi0 = PureState(u.apply(tensor_state(ket0, w).amplitudes()));

  const SchmidtDecomp sd = schmidt(psi1);

  // Expand psi0 in the Schmidt product basis of psi1.
  cplx a[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cplx acc = 0.0;
      for (int qa = 0; qa < 2; ++qa)
        for (int qb = 0; qb < 2; ++qb)
          acc += std::conj(sd.basis_a[i].amplitude(qa) * sd.basis_b[j].amplitude(qb)) *
                 psi0.amplitude(2 * qa + qb);
      a[i][j] = acc;
    }

  // Orthogonality of psi0 to psi1 forces (a00, a11) onto the (r1, -r0)
  // direction; alpha is the coefficient along it.
  const cplx alpha = a[0][0] * sd.r1 - a[1][1] * sd.r0;
  return ProofCoefficients(sd.r0, sd.r1, alpha, a[0][1], a[1][0]);
}

ConstraintResiduals constraint_residuals(const ProofCoefficients& pc) {
  ConstraintResiduals res;
  res[0] = std::abs(std::conj(pc.d) * pc.r0);
  res[1] = std::abs(pc.c * pc.r1);
  res[2] = std::abs(std::conj(pc.c) * pc.r0);
  res[3] = std::abs(pc.d * pc.r1);
  res[4] = std::abs(pc.alpha * pc.r0 * pc.r1);
  res[5] = std::abs(std::norm(pc.alpha) * pc.r1 * pc.r1 + std::norm(pc.d) -
                    pc.r0 * pc.r0);
  res[6] = std::abs(std::conj(pc.c) * pc.alpha * pc.r1 -
                    pc.d * std::conj(pc.alpha) * pc.r0);
  return res;
}

CnotDemo cnot_demo(const BlochAngles& angles) {
  const PureState w({cplx(1.0, 0.0), cplx(0.0, 0.0)});
  PureState psi = apply_split(cnot_matrix(), angles, w);
  DensityMatrix2 rho_a = reduced(psi, Subsystem::A);
  DensityMatrix2 rho_b = reduced(psi, Subsystem::B);
  return CnotDemo{std::move(psi), std::move(rho_a), std::move(rho_b)};
}

}  // namespace nosplit
