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

#include "states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nosplit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double norm2(const std::vector<cplx>& v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

}  // namespace

BlochAngles::BlochAngles(double theta_, double phi_) : theta(theta_), phi(phi_) {
  require(std::isfinite(theta) && std::isfinite(phi), ErrorCode::non_finite,
          "BlochAngles: non-finite angle");
  require(theta >= 0.0 && theta <= kPi, ErrorCode::invalid_argument,
          "BlochAngles: theta outside [0, pi]");
  require(phi >= 0.0 && phi < kTwoPi, ErrorCode::invalid_argument,
          "BlochAngles: phi outside [0, 2pi)");
}

BlochAngles wrap_bloch(double theta, double phi) {
  require(std::isfinite(theta) && std::isfinite(phi), ErrorCode::non_finite,
          "wrap_bloch: non-finite angle");
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  if (theta > kPi) {
    theta = kTwoPi - theta;
    phi += kPi;
  }
  theta = std::clamp(theta, 0.0, kPi);
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  return BlochAngles(theta, phi);
}

PureState::PureState(std::vector<cplx> amplitudes) : amplitudes_(std::move(amplitudes)) {
  require(amplitudes_.size() == 2 || amplitudes_.size() == 4, ErrorCode::invalid_argument,
          "PureState: dimension must be 2 or 4");
  for (const auto& z : amplitudes_)
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), ErrorCode::non_finite,
            "PureState: non-finite amplitude");
  require(std::abs(norm2(amplitudes_) - 1.0) <= 1e-10, ErrorCode::invalid_argument,
          "PureState: amplitudes not normalized");
}

DensityMatrix2::DensityMatrix2(CMatrix entries) : entries_(std::move(entries)) {
  require(entries_.rows() == 2 && entries_.cols() == 2, ErrorCode::invalid_argument,
          "DensityMatrix2: 2x2 matrix required");
  require(matrix_is_finite(entries_), ErrorCode::non_finite,
          "DensityMatrix2: non-finite entry");
  require(frobenius_norm(entries_ - adjoint(entries_)) <= 1e-10, ErrorCode::not_hermitian,
          "DensityMatrix2: not Hermitian");
  require(std::abs(entries_.trace().real() - 1.0) <= 1e-10 &&
              std::abs(entries_.trace().imag()) <= 1e-10,
          ErrorCode::invalid_argument, "DensityMatrix2: trace is not 1");
  const double a = entries_(0, 0).real();
  const double d = entries_(1, 1).real();
  const double rad = std::hypot(0.5 * (a - d), std::abs(entries_(0, 1)));
  require(0.5 * (a + d) - rad >= -1e-10, ErrorCode::invalid_argument,
          "DensityMatrix2: negative eigenvalue");
}

PureState bloch_state(const BlochAngles& angles) {
  const double c = std::cos(0.5 * angles.theta);
  const double s = std::sin(0.5 * angles.theta);
  return PureState({cplx(c, 0.0), s * cplx(std::cos(angles.phi), std::sin(angles.phi))});
}

CMatrix density(const PureState& psi) {
  const int n = psi.dim();
  CMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = psi.amplitude(i) * std::conj(psi.amplitude(j));
  return out;
}

DensityMatrix2 reduced(const PureState& psi, Subsystem keep) {
  require(psi.dim() == 4, ErrorCode::dimension_mismatch,
          "reduced: two-qubit state required");
  CMatrix rho(2, 2);
  if (keep == Subsystem::A) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        cplx acc = 0.0;
        for (int b = 0; b < 2; ++b)
          acc += psi.amplitude(2 * i + b) * std::conj(psi.amplitude(2 * j + b));
        rho(i, j) = acc;
      }
  } else {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        cplx acc = 0.0;
        for (int a = 0; a < 2; ++a)
          acc += psi.amplitude(2 * a + i) * std::conj(psi.amplitude(2 * a + j));
        rho(i, j) = acc;
      }
  }
  // Clean up rounding so the invariants hold exactly where they can.
  rho(0, 0) = cplx(rho(0, 0).real(), 0.0);
  rho(1, 1) = cplx(rho(1, 1).real(), 0.0);
  rho(1, 0) = std::conj(rho(0, 1));
  return DensityMatrix2(rho);
}

double trace_distance(const DensityMatrix2& rho, const DensityMatrix2& sigma) {
  const CMatrix d = rho.entries() - sigma.entries();
  const double a = d(0, 0).real();
  const double dd = d(1, 1).real();
  const cplx b = 0.5 * (d(0, 1) + std::conj(d(1, 0)));
  const double mean = 0.5 * (a + dd);
  const double rad = std::hypot(0.5 * (a - dd), std::abs(b));
  const double value = 0.5 * (std::abs(mean + rad) + std::abs(mean - rad));
  return std::clamp(value, 0.0, 1.0);
}

double fidelity_pure(const PureState& a, const PureState& b) {
  require(a.dim() == b.dim(), ErrorCode::dimension_mismatch,
          "fidelity_pure: dimension mismatch");
  cplx acc = 0.0;
  for (int i = 0; i < a.dim(); ++i) acc += std::conj(a.amplitude(i)) * b.amplitude(i);
  return std::clamp(std::norm(acc), 0.0, 1.0);
}

SchmidtDecomp schmidt(const PureState& psi) {
  require(psi.dim() == 4, ErrorCode::dimension_mismatch,
          "schmidt: two-qubit state required");
  CMatrix coeff(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) coeff(a, b) = psi.amplitude(2 * a + b);
  const Svd2x2 s = svd2x2(coeff);
  PureState a0({s.left(0, 0), s.left(1, 0)});
  PureState a1({s.left(0, 1), s.left(1, 1)});
  PureState b0({std::conj(s.right(0, 0)), std::conj(s.right(1, 0))});
  PureState b1({std::conj(s.right(0, 1)), std::conj(s.right(1, 1))});
  return SchmidtDecomp{s.sigma0, s.sigma1, {a0, a1}, {b0, b1}};
}

PureState tensor_state(const PureState& a, const PureState& b) {
  require(a.dim() == 2 && b.dim() == 2, ErrorCode::dimension_mismatch,
          "tensor_state: one-qubit factors required");
  std::vector<cplx> out(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[2 * i + j] = a.amplitude(i) * b.amplitude(j);
  return PureState(std::move(out));
}

}  // namespace nosplit
