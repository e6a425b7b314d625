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
#include <complex>
#include <cstring>
#include <numbers>
#include <string>

#include "nosplit/nosplit.h"

namespace {

constexpr double kPi = std::numbers::pi;

struct Unitary {
  ns_unitary* ptr = nullptr;
  ~Unitary() { ns_unitary_free(ptr); }
};

struct Grid {
  ns_grid* ptr = nullptr;
  Grid(int t, int p) { REQUIRE(ns_grid_create(t, p, &ptr) == NS_OK); }
  ~Grid() { ns_grid_free(ptr); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(ns_version()) == "0.1.0");
  CHECK(std::string(ns_status_name(NS_OK)) == "NS_OK");
  CHECK(std::string(ns_status_name(NS_ERROR_PARSE)) == "NS_ERROR_PARSE");
}

TEST_CASE("null-pointer and invalid-argument handling") {
  CHECK(ns_unitary_cnot(nullptr) == NS_ERROR_NULL_POINTER);
  ns_grid* grid = nullptr;
  CHECK(ns_grid_create(0, 5, &grid) == NS_ERROR_INVALID_ARGUMENT);
  CHECK(std::strlen(ns_last_error_message()) > 0);

  Grid g(13, 16);
  double x = 0.0;
  CHECK(ns_grid_theta(g.ptr, 13, &x) == NS_ERROR_INVALID_ARGUMENT);
  CHECK(ns_grid_theta(g.ptr, -1, &x) == NS_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("grid accessors") {
  Grid g(13, 16);
  int32_t nt = 0, np = 0;
  CHECK(ns_grid_theta_count(g.ptr, &nt) == NS_OK);
  CHECK(ns_grid_phi_count(g.ptr, &np) == NS_OK);
  CHECK(nt == 13);
  CHECK(np == 16);
  double t0 = -1.0, t12 = -1.0, p0 = -1.0;
  CHECK(ns_grid_theta(g.ptr, 0, &t0) == NS_OK);
  CHECK(ns_grid_theta(g.ptr, 12, &t12) == NS_OK);
  CHECK(ns_grid_phi(g.ptr, 0, &p0) == NS_OK);
  CHECK(t0 == 0.0);
  CHECK(t12 == kPi);
  CHECK(p0 == 0.0);
}

TEST_CASE("gate text compilation and parse errors") {
  Unitary u;
  CHECK(ns_unitary_from_gate_text("CNOT 0 1\n", "good.qg", &u.ptr, nullptr) == NS_OK);
  double re = 0.0, im = 0.0;
  CHECK(ns_unitary_entry(u.ptr, 2, 3, &re, &im) == NS_OK);
  CHECK(re == 1.0);
  CHECK(im == 0.0);
  CHECK(ns_unitary_entry(u.ptr, 4, 0, &re, &im) == NS_ERROR_INVALID_ARGUMENT);

  Unitary bad;
  ns_parse_error perr;
  CHECK(ns_unitary_from_gate_text("CNOT 0 0\n", "bad.qg", &bad.ptr, &perr) ==
        NS_ERROR_PARSE);
  CHECK(perr.line == 1);
  CHECK(perr.column == 8);
  CHECK(std::string(perr.message).find("duplicate") != std::string::npos);
  CHECK(std::string(ns_last_error_message()).find("line 1") != std::string::npos);
}

TEST_CASE("generator parameterization and Haar sampling") {
  double zeros[16] = {};
  Unitary u;
  CHECK(ns_unitary_from_generator(zeros, &u.ptr) == NS_OK);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      double re = 0.0, im = 0.0;
      ns_unitary_entry(u.ptr, r, c, &re, &im);
      CHECK(std::abs(re - (r == c ? 1.0 : 0.0)) <= 1e-14);
      CHECK(std::abs(im) <= 1e-14);
    }

  Unitary h1, h2;
  CHECK(ns_unitary_haar(42, &h1.ptr) == NS_OK);
  CHECK(ns_unitary_haar(42, &h2.ptr) == NS_OK);
  // deterministic in the seed, and unitary (check U'U = I from entries)
  std::complex<double> m[4][4];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      double re1 = 0.0, im1 = 0.0, re2 = 0.0, im2 = 0.0;
      ns_unitary_entry(h1.ptr, r, c, &re1, &im1);
      ns_unitary_entry(h2.ptr, r, c, &re2, &im2);
      CHECK(re1 == re2);
      CHECK(im1 == im2);
      m[r][c] = {re1, im1};
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::complex<double> acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += std::conj(m[k][i]) * m[k][j];
      CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) <= 1e-10);
    }
}

TEST_CASE("splitting diagnostics for CNOT through the C API") {
  Unitary cnot;
  REQUIRE(ns_unitary_cnot(&cnot.ptr) == NS_OK);
  Grid g(13, 16);

  double va = -1.0, vb = -1.0;
  CHECK(ns_violation_a(cnot.ptr, 0.0, 0.0, g.ptr, &va) == NS_OK);
  CHECK(ns_violation_b(cnot.ptr, 0.0, 0.0, g.ptr, &vb) == NS_OK);
  CHECK(va <= 1e-12);
  CHECK(std::abs(vb - 1.0) <= 1e-12);

  ns_split_violation sv;
  CHECK(ns_splitting_residual(cnot.ptr, 0.0, 0.0, g.ptr, &sv) == NS_OK);
  CHECK(std::abs(sv.total - 1.0) <= 1e-12);
  CHECK(sv.total == sv.v_a + sv.v_b);

  double ent = 0.0;
  CHECK(ns_output_entanglement(cnot.ptr, 0.0, 0.0, g.ptr, &ent) == NS_OK);
  CHECK(std::abs(ent - 1.0 / std::sqrt(2.0)) <= 1e-10);

  ns_proof_coefficients pc;
  CHECK(ns_proof_coefficients_compute(cnot.ptr, 0.0, 0.0, &pc) == NS_OK);
  CHECK(std::abs(pc.r0 - 1.0) <= 1e-12);
  CHECK(pc.r1 <= 1e-12);
  CHECK(std::abs(pc.alpha_re + 1.0) <= 1e-12);
  CHECK(std::abs(pc.alpha_im) <= 1e-12);
  CHECK(pc.degenerate == 1);

  double res[7];
  CHECK(ns_constraint_residuals(&pc, res) == NS_OK);
  for (int k = 0; k < 7; ++k) {
    if (k == 5)
      CHECK(std::abs(res[k] - 1.0) <= 1e-12);
    else
      CHECK(res[k] <= 1e-12);
  }
}

TEST_CASE("cnot marginals and trace distance helpers") {
  double rho_a[8], rho_b[8];
  CHECK(ns_cnot_marginals(2.0 * kPi / 3.0, 0.5, rho_a, rho_b) == NS_OK);
  CHECK(std::abs(rho_a[0] - 0.25) <= 1e-12);
  CHECK(std::abs(rho_a[6] - 0.75) <= 1e-12);
  CHECK(std::abs(rho_b[0] - 0.25) <= 1e-12);

  double top[8], bottom[8], other[8];
  CHECK(ns_cnot_marginals(0.0, 0.0, top, other) == NS_OK);
  CHECK(ns_cnot_marginals(kPi, 0.0, bottom, other) == NS_OK);
  double dist = 0.0;
  CHECK(ns_trace_distance(top, bottom, &dist) == NS_OK);
  CHECK(std::abs(dist - 1.0) <= 1e-12);

  CHECK(ns_cnot_marginals(-0.5, 0.0, rho_a, rho_b) == NS_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("haar sweep through the C API") {
  Grid g(13, 16);
  ns_sweep_summary sum;
  CHECK(ns_haar_sweep(50, 9001, g.ptr, 1e-6, &sum) == NS_OK);
  CHECK(sum.samples == 50);
  CHECK(sum.below_tol == 0);
  CHECK(sum.min_total > 1e-6);
  CHECK(sum.min_total <= sum.median_total);
  CHECK(sum.median_total <= sum.max_total);
  CHECK(sum.min_max_constraint > 1e-6);
  CHECK(ns_haar_sweep(50, 9001, g.ptr, -1.0, &sum) == NS_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("search through the C API is deterministic") {
  ns_search_options opts;
  ns_search_options_init(&opts);
  CHECK(opts.restarts == 100);
  CHECK(opts.max_evals_per_restart == 20000);
  opts.restarts = 2;
  opts.max_evals_per_restart = 400;
  opts.seed = 77;

  ns_search_result* a = nullptr;
  ns_search_result* b = nullptr;
  REQUIRE(ns_search_run(&opts, &a) == NS_OK);
  REQUIRE(ns_search_run(&opts, &b) == NS_OK);

  double ta = 0.0, tb = 0.0;
  ns_search_result_best_total(a, &ta);
  ns_search_result_best_total(b, &tb);
  CHECK(ta == tb);
  CHECK(ta > 1e-6);

  int64_t na = 0, nb = 0;
  ns_search_result_history_size(a, &na);
  ns_search_result_history_size(b, &nb);
  CHECK(na == 2);
  CHECK(nb == 2);
  for (int64_t i = 0; i < na; ++i) {
    int32_t ra = 0, rb = 0;
    double va = 0.0, vb = 0.0;
    CHECK(ns_search_result_history_entry(a, i, &ra, &va) == NS_OK);
    CHECK(ns_search_result_history_entry(b, i, &rb, &vb) == NS_OK);
    CHECK(ra == rb);
    CHECK(va == vb);
  }
  CHECK(ns_search_result_history_entry(a, 5, nullptr, nullptr) ==
        NS_ERROR_NULL_POINTER);

  double v_a = 0.0, v_b = 0.0;
  CHECK(ns_search_result_best_violation(a, &v_a, &v_b) == NS_OK);
  CHECK(std::abs(v_a + v_b - ta) <= 1e-12);

  double u_params[16], w_params[2];
  CHECK(ns_search_result_best_params(a, u_params, w_params) == NS_OK);
  uint64_t seed = 0;
  CHECK(ns_search_result_seed(a, &seed) == NS_OK);
  CHECK(seed == 77);

  ns_search_result_free(a);
  ns_search_result_free(b);
}

TEST_CASE("combiner through the C API") {
  ns_combine_analytic an;
  CHECK(ns_combine_analytic_compute(kPi / 3.0, kPi / 4.0, &an) == NS_OK);
  CHECK(std::abs(an.p_even - 0.5) <= 1e-12);
  CHECK(std::abs(an.p_odd - 0.5) <= 1e-12);
  CHECK(an.fidelity_even >= 1.0 - 1e-12);
  CHECK(an.fidelity_odd >= 1.0 - 1e-12);
  // |<0|final_even>|^2 = cos^2(pi/6)
  CHECK(std::abs(an.final_even[0] * an.final_even[0] +
                 an.final_even[1] * an.final_even[1] -
                 std::cos(kPi / 6.0) * std::cos(kPi / 6.0)) <= 1e-10);

  ns_combine_stats st;
  CHECK(ns_combine_statistics(kPi / 3.0, kPi / 4.0, 5000, 7, &st) == NS_OK);
  CHECK(st.shots == 5000);
  CHECK(st.n_even + st.n_odd == 5000);
  CHECK(st.fidelity_even >= 1.0 - 1e-12);
  CHECK(st.fidelity_odd >= 1.0 - 1e-12);
  CHECK(std::abs(st.p_hat_even - 0.5) < 0.05);

  ns_combine_stats st2;
  CHECK(ns_combine_statistics(kPi / 3.0, kPi / 4.0, 5000, 7, &st2) == NS_OK);
  CHECK(st.n_even == st2.n_even);

  int32_t odd = -1;
  double final_state[4];
  CHECK(ns_combine_single(kPi / 3.0, kPi / 4.0, 3, &odd, final_state) == NS_OK);
  CHECK((odd == 0 || odd == 1));
  const double nrm = final_state[0] * final_state[0] + final_state[1] * final_state[1] +
                     final_state[2] * final_state[2] + final_state[3] * final_state[3];
  CHECK(std::abs(nrm - 1.0) <= 1e-10);

  CHECK(ns_combine_statistics(kPi / 3.0, kPi / 4.0, 0, 7, &st) ==
        NS_ERROR_INVALID_ARGUMENT);
  CHECK(ns_combine_analytic_compute(7.0, 0.0, &an) == NS_ERROR_INVALID_ARGUMENT);
}
