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

#include "searcher.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

namespace nosplit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kParamCount = 18;

double checked_eval(const std::function<double(std::span<const double>)>& f,
                    std::span<const double> x) {
  const double v = f(x);
  require(std::isfinite(v), ErrorCode::non_finite,
          "nelder_mead: objective returned a non-finite value");
  return v;
}

}  // namespace

CMatrix param_to_unitary(std::span<const double> u_params) {
  require(u_params.size() == 16, ErrorCode::invalid_argument,
          "param_to_unitary: 16 parameters required");
  for (double p : u_params)
    require(std::isfinite(p), ErrorCode::non_finite,
            "param_to_unitary: non-finite parameter");

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CMatrix h(4, 4);
  int k = 0;
  for (int j = 0; j < 4; ++j) h(j, j) = u_params[k++];
  for (int j = 0; j < 4; ++j)
    for (int l = j + 1; l < 4; ++l) {
      h(j, l) += cplx(u_params[k] * inv_sqrt2, 0.0);
      h(l, j) += cplx(u_params[k] * inv_sqrt2, 0.0);
      ++k;
    }
  for (int j = 0; j < 4; ++j)
    for (int l = j + 1; l < 4; ++l) {
      h(j, l) += cplx(0.0, u_params[k] * inv_sqrt2);
      h(l, j) += cplx(0.0, -u_params[k] * inv_sqrt2);
      ++k;
    }
  return unitary_from_hermitian(h);
}

CMatrix haar_unitary(Rng& rng) {
  CMatrix g(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g(r, c) = cplx(rng.normal(), rng.normal());
  return gram_schmidt_unitary(g);
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> x0, const NelderMeadOptions& opts) {
  const int n = static_cast<int>(x0.size());
  require(n >= 1, ErrorCode::invalid_argument, "nelder_mead: empty start point");
  require(opts.max_evals >= 1 && opts.f_tol > 0.0, ErrorCode::invalid_argument,
          "nelder_mead: invalid options");

  std::vector<std::vector<double>> verts(n + 1, std::vector<double>(x0.begin(), x0.end()));
  for (int i = 0; i < n; ++i) verts[i + 1][i] += opts.initial_step;

  std::vector<double> fvals(n + 1);
  long evals = 0;
  std::vector<double> x_best(x0.begin(), x0.end());
  double f_best = std::numeric_limits<double>::infinity();

  auto eval = [&](std::span<const double> x) {
    const double v = checked_eval(objective, x);
    ++evals;
    if (v < f_best) {
      f_best = v;
      x_best.assign(x.begin(), x.end());
    }
    return v;
  };

  for (int i = 0; i <= n; ++i) fvals[i] = eval(verts[i]);

  std::vector<int> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);

  while (evals < opts.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return fvals[i] < fvals[j]; });
    const int best = order[0];
    // For n = 1 there is no distinct second-worst vertex; the reflection
    // acceptance band extends to the worst one.
    const int second_worst = (n >= 2) ? order[n - 1] : order[n];
    const int worst = order[n];
    const double fspread = fvals[worst] - fvals[best];
    if (fspread < opts.f_tol) {
      if (fspread > 0.0) break;
      // Exact ties happen on lattice-symmetric points and on flat patches;
      // keep contracting until the simplex itself collapses.
      double diam = 0.0;
      double scale = 1.0;
      for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(verts[best][i]));
      for (int k = 0; k <= n; ++k)
        for (int i = 0; i < n; ++i)
          diam = std::max(diam, std::abs(verts[k][i] - verts[best][i]));
      if (diam <= 1e-12 * scale) break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (int i = 0; i < n; ++i) centroid[i] += verts[k][i];
    }
    for (int i = 0; i < n; ++i) centroid[i] /= n;

    for (int i = 0; i < n; ++i) xr[i] = centroid[i] + 1.0 * (centroid[i] - verts[worst][i]);
    const double fr = eval(xr);

    if (fr < fvals[best]) {
      for (int i = 0; i < n; ++i) xe[i] = centroid[i] + 2.0 * (centroid[i] - verts[worst][i]);
      const double fe = eval(xe);
      if (fe < fr) {
        verts[worst] = xe;
        fvals[worst] = fe;
      } else {
        verts[worst] = xr;
        fvals[worst] = fr;
      }
    } else if (fr < fvals[second_worst]) {
      verts[worst] = xr;
      fvals[worst] = fr;
    } else {
      bool shrink = false;
      if (fr < fvals[worst]) {
        // outside contraction
        for (int i = 0; i < n; ++i) xc[i] = centroid[i] + 0.5 * (xr[i] - centroid[i]);
        const double fc = eval(xc);
        if (fc <= fr) {
          verts[worst] = xc;
          fvals[worst] = fc;
        } else {
          shrink = true;
        }
      } else {
        // inside contraction
        for (int i = 0; i < n; ++i)
          xc[i] = centroid[i] + 0.5 * (verts[worst][i] - centroid[i]);
        const double fc = eval(xc);
        if (fc < fvals[worst]) {
          verts[worst] = xc;
          fvals[worst] = fc;
        } else {
          shrink = true;
        }
      }
      if (shrink) {
        for (int k = 0; k <= n; ++k) {
          if (k == best) continue;
          for (int i = 0; i < n; ++i)
            verts[k][i] = verts[best][i] + 0.5 * (verts[k][i] - verts[best][i]);
          fvals[k] = eval(verts[k]);
          if (evals >= opts.max_evals) break;
        }
      }
    }
  }
  return NelderMeadResult{std::move(x_best), f_best, evals};
}

double splitting_objective(std::span<const double> params, const AngleGrid& grid) {
  require(params.size() == kParamCount, ErrorCode::invalid_argument,
          "splitting_objective: 18 parameters required");
  const CMatrix u = param_to_unitary(params.first(16));
  const PureState w = bloch_state(wrap_bloch(params[16], params[17]));
  return splitting_residual(u, w, grid).total;
}

SearchResult search_splitter(const SearchOptions& opts) {
  require(opts.restarts >= 1, ErrorCode::invalid_argument,
          "search_splitter: restarts must be >= 1");
  require(opts.max_evals_per_restart >= 1, ErrorCode::invalid_argument,
          "search_splitter: max_evals_per_restart must be >= 1");
  require(opts.simplex_tol > 0.0, ErrorCode::invalid_argument,
          "search_splitter: simplex_tol must be positive");

  struct Slot {
    double total = std::numeric_limits<double>::infinity();
    std::vector<double> x;
    long evals = 0;
    bool converged = false;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(opts.restarts));

  auto run_restart = [&](long k) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(k)));
    std::vector<double> x0(kParamCount);
    for (int i = 0; i < 16; ++i) x0[i] = rng.normal(0.0, kPi);
    x0[16] = rng.uniform(0.0, kPi);
    x0[17] = rng.uniform(0.0, 2.0 * kPi);
    Slot& slot = slots[static_cast<std::size_t>(k)];
    try {
      NelderMeadResult nm = nelder_mead(
          [&](std::span<const double> x) { return splitting_objective(x, opts.grid); },
          x0,
          NelderMeadOptions{opts.max_evals_per_restart, opts.simplex_tol, 0.25});
      slot.total = nm.f_best;
      slot.x = std::move(nm.x_best);
      slot.evals = nm.evals;
      slot.converged = true;
    } catch (const Error&) {
      // aborted restart; recorded as non-converged (infinite total)
    }
  };

  int threads = opts.threads;
  if (threads <= 0)
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<long>(threads, opts.restarts));

  if (threads <= 1) {
    for (long k = 0; k < opts.restarts; ++k) run_restart(k);
  } else {
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (;;) {
          const long k = next.fetch_add(1);
          if (k >= opts.restarts) return;
          run_restart(k);
        }
      });
    for (auto& th : pool) th.join();
  }

  // Aggregate in restart-index order.
  SearchResult result;
  result.restarts = opts.restarts;
  result.seed = opts.seed;
  result.evals = 0;
  result.best_total = std::numeric_limits<double>::infinity();
  result.history.reserve(static_cast<std::size_t>(opts.restarts));
  long best_k = -1;
  for (long k = 0; k < opts.restarts; ++k) {
    const Slot& slot = slots[static_cast<std::size_t>(k)];
    result.history.push_back({static_cast<int>(k), slot.total});
    result.evals += slot.evals;
    if (slot.converged && slot.total < result.best_total) {
      result.best_total = slot.total;
      best_k = k;
    }
  }
  require(best_k >= 0, ErrorCode::numerical, "search_splitter: every restart failed");

  const Slot& best = slots[static_cast<std::size_t>(best_k)];
  std::copy_n(best.x.begin(), 16, result.best_params.u_params.begin());
  std::copy_n(best.x.begin() + 16, 2, result.best_params.w_params.begin());

  const CMatrix u = param_to_unitary(result.best_params.u_params);
  const PureState w = bloch_state(
      wrap_bloch(result.best_params.w_params[0], result.best_params.w_params[1]));
  const SplitViolation sv = splitting_residual(u, w, opts.grid);
  result.best_v_a = sv.v_a;
  result.best_v_b = sv.v_b;
  return result;
}

std::vector<SweepSample> haar_sweep(long samples, std::uint64_t seed,
                                    const AngleGrid& grid) {
  require(samples >= 1, ErrorCode::invalid_argument,
          "haar_sweep: samples must be >= 1");
  std::vector<SweepSample> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (long k = 0; k < samples; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const CMatrix u = haar_unitary(rng);
    // Ancilla uniform on the Bloch sphere.
    const double theta = std::acos(1.0 - 2.0 * rng.uniform01());
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    const PureState w = bloch_state(wrap_bloch(theta, phi));
    const double total = splitting_residual(u, w, grid).total;
    const ConstraintResiduals res = constraint_residuals(proof_coefficients(u, w));
    const double maxc = *std::max_element(res.begin(), res.end());
    out.push_back({total, maxc});
  }
  return out;
}

}  // namespace nosplit
