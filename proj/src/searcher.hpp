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
#include <cstdint>
#include <functional>

#include "rng.hpp"
#include "splitcheck.hpp"

namespace nosplit {

// Candidate splitter coordinates: 16 coefficients of a Hermitian generator
// basis for U(4), plus the ancilla Bloch angles.
struct SearchParams {
  std::array<double, 16> u_params;
  std::array<double, 2> w_params;
};

struct SearchOptions {
  long restarts = 100;
  long max_evals_per_restart = 20000;
  double simplex_tol = 1e-10;
  std::uint64_t seed = 0;
  AngleGrid grid;
  int threads = 0;  // 0 = hardware concurrency; results do not depend on it
};

struct RestartRecord {
  int restart;
  double total;  // converged objective value for this restart
};

struct SearchResult {
  SearchParams best_params;
  double best_total;
  double best_v_a;
  double best_v_b;
  long restarts;
  long evals;
  std::uint64_t seed;
  std::vector<RestartRecord> history;
};

// exp(i sum_k p_k G_k) over the 16-element Hermitian basis
// {E_jj; (E_jk + E_kj)/sqrt(2); i(E_jk - E_kj)/sqrt(2), j < k}. Surjective
// onto U(4).
CMatrix param_to_unitary(std::span<const double> u_params);

// Haar-distributed 4x4 unitary: Gram-Schmidt of an i.i.d. complex Gaussian
// (Ginibre) sample under the phase convention of gram_schmidt_unitary.
CMatrix haar_unitary(Rng& rng);

struct NelderMeadOptions {
  long max_evals = 20000;
  double f_tol = 1e-10;       // stop when max-min objective spread over the simplex drops below
  double initial_step = 0.25; // per-coordinate offset of the initial simplex
};

struct NelderMeadResult {
  std::vector<double> x_best;
  double f_best;
  long evals;
};

// Standard simplex search: reflection 1.0, expansion 2.0, contraction 0.5,
// shrink 0.5. The objective must return finite values.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> x0, const NelderMeadOptions& opts);

// splitting_residual(...).total of the splitter/ancilla encoded in 18 raw
// parameters (16 generator coefficients + 2 unwrapped Bloch angles).
double splitting_objective(std::span<const double> params, const AngleGrid& grid);

// Multi-start Nelder-Mead over the 18-parameter space. Restart k draws its
// start from a seed hash-derived from (seed, k), so the result is identical
// regardless of thread count or scheduling.
SearchResult search_splitter(const SearchOptions& opts);

struct SweepSample {
  double total;           // grid splitting residual
  double max_constraint;  // max component of the constraint residual vector
};

// Haar-random (U, w) samples of the splitting diagnostics; sample k is
// derived from (seed, k).
std::vector<SweepSample> haar_sweep(long samples, std::uint64_t seed,
                                    const AngleGrid& grid);

}  // namespace nosplit
