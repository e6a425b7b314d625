/* Copyright 2026 The nosplit developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of libnosplit.
 *
 * The library probes whether a two-qubit unitary can split the amplitude
 * parameter theta and the phase parameter phi of an unknown qubit
 * cos(theta/2)|0> + sin(theta/2) e^{i phi}|1> into separate qubits, and
 * simulates the converse combining protocol (parity measurement + XOR +
 * discard).
 *
 * Every function returns NS_OK on success or an error code; a thread-local
 * human-readable message for the most recent failure is available through
 * ns_last_error_message(). Objects returned through ns_*_create/ns_*_from_*
 * out-parameters are owned by the caller and released with the matching
 * ns_*_free call. Handles are not thread-safe to mutate concurrently, but
 * all operations on distinct handles, and read-only use of shared handles,
 * are safe from multiple threads.
 */

#ifndef NOSPLIT_NOSPLIT_H_
#define NOSPLIT_NOSPLIT_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ns_status {
  NS_OK = 0,
  NS_ERROR_NULL_POINTER = 1,
  NS_ERROR_INVALID_ARGUMENT = 2,
  NS_ERROR_NON_FINITE = 3,
  NS_ERROR_NOT_HERMITIAN = 4,
  NS_ERROR_NOT_UNITARY = 5,
  NS_ERROR_RANK_DEFICIENT = 6,
  NS_ERROR_DIMENSION_MISMATCH = 7,
  NS_ERROR_PARSE = 8,
  NS_ERROR_ENTANGLED_RESIDUE = 9,
  NS_ERROR_NUMERICAL = 10,
  NS_ERROR_INTERNAL = 11
} ns_status;

const char* ns_status_name(ns_status status);

/* Message for the most recent error on this thread; empty string if none. */
const char* ns_last_error_message(void);

const char* ns_version(void);

/* ---- two-qubit unitaries ---------------------------------------------- */

typedef struct ns_unitary ns_unitary; /* opaque 4x4 unitary */

typedef struct ns_parse_error {
  int32_t line;   /* 1-based */
  int32_t column; /* 1-based */
  char message[240];
} ns_parse_error;

ns_status ns_unitary_identity(ns_unitary** out);
ns_status ns_unitary_cnot(ns_unitary** out);

/* Compile gate-program text (see the gate file format in the project README).
 * On NS_ERROR_PARSE the position and message are stored in *parse_error_out
 * when it is non-NULL. */
ns_status ns_unitary_from_gate_text(const char* text, const char* source_name,
                                    ns_unitary** out, ns_parse_error* parse_error_out);

/* exp(i sum_k p_k G_k) over the 16-element Hermitian generator basis. */
ns_status ns_unitary_from_generator(const double params[16], ns_unitary** out);

/* Haar-distributed sample, deterministic in the seed. */
ns_status ns_unitary_haar(uint64_t seed, ns_unitary** out);

/* Entry at (row, col), 0 <= row, col < 4. */
ns_status ns_unitary_entry(const ns_unitary* u, int32_t row, int32_t col, double* re,
                           double* im);
void ns_unitary_free(ns_unitary* u);

/* ---- evaluation grid --------------------------------------------------- */

typedef struct ns_grid ns_grid; /* opaque (theta, phi) sample grid */

/* Uniform samples: theta_steps over [0, pi] including both endpoints,
 * phi_steps over [0, 2pi). The default grid is 13 x 16. */
ns_status ns_grid_create(int32_t theta_steps, int32_t phi_steps, ns_grid** out);
ns_status ns_grid_theta_count(const ns_grid* grid, int32_t* out);
ns_status ns_grid_phi_count(const ns_grid* grid, int32_t* out);
ns_status ns_grid_theta(const ns_grid* grid, int32_t index, double* out);
ns_status ns_grid_phi(const ns_grid* grid, int32_t index, double* out);
void ns_grid_free(ns_grid* grid);

/* ---- splitting diagnostics --------------------------------------------- */

/* The ancilla state |w> is given by its Bloch angles throughout. */

typedef struct ns_split_violation {
  double v_a;   /* phi-dependence of the A marginal over the grid */
  double v_b;   /* theta-dependence of the B marginal over the grid */
  double total; /* v_a + v_b; positive for every (U, w) */
} ns_split_violation;

ns_status ns_violation_a(const ns_unitary* u, double w_theta, double w_phi,
                         const ns_grid* grid, double* out);
ns_status ns_violation_b(const ns_unitary* u, double w_theta, double w_phi,
                         const ns_grid* grid, double* out);
ns_status ns_splitting_residual(const ns_unitary* u, double w_theta, double w_phi,
                                const ns_grid* grid, ns_split_violation* out);

/* Max second Schmidt coefficient of the output over the grid; zero iff the
 * output stays a product state everywhere. */
ns_status ns_output_entanglement(const ns_unitary* u, double w_theta, double w_phi,
                                 const ns_grid* grid, double* out);

typedef struct ns_proof_coefficients {
  double r0; /* Schmidt coefficients of U(|1> ox |w>), r0 >= r1 >= 0 */
  double r1;
  double alpha_re, alpha_im;
  double c_re, c_im;
  double d_re, d_im;
  int32_t degenerate; /* nonzero when r1 < 1e-8 (c, d convention-dependent) */
} ns_proof_coefficients;

ns_status ns_proof_coefficients_compute(const ns_unitary* u, double w_theta,
                                        double w_phi, ns_proof_coefficients* out);

/* The seven residual moduli of the splitting constraint system, in order:
 * |d* r0|, |c r1|, |c* r0|, |d r1|, |alpha r0 r1|,
 * ||alpha|^2 r1^2 + |d|^2 - r0^2|, |c* alpha r1 - d alpha* r0|. */
ns_status ns_constraint_residuals(const ns_proof_coefficients* pc, double out[7]);

/* Marginals of CNOT (|v(theta,phi)> ox |0>), each written as 2x2 row-major
 * interleaved (re, im) pairs: 8 doubles. */
ns_status ns_cnot_marginals(double theta, double phi, double rho_a[8], double rho_b[8]);

/* Trace distance of two density matrices in the same 8-double layout. */
ns_status ns_trace_distance(const double rho[8], const double sigma[8], double* out);

/* ---- counterexample search --------------------------------------------- */

typedef struct ns_search_options {
  int64_t restarts;              /* default 100 */
  int64_t max_evals_per_restart; /* default 20000 */
  double simplex_tol;            /* default 1e-10 */
  uint64_t seed;                 /* default 0 */
  int32_t theta_steps;           /* default 13 */
  int32_t phi_steps;             /* default 16 */
  int32_t threads;               /* default 0 = hardware; result-invariant */
} ns_search_options;

void ns_search_options_init(ns_search_options* opts);

typedef struct ns_search_result ns_search_result; /* opaque */

/* Multi-start Nelder-Mead minimization of the total splitting residual over
 * 18 parameters. Deterministic in the options, independent of threads. */
ns_status ns_search_run(const ns_search_options* opts, ns_search_result** out);

ns_status ns_search_result_best_total(const ns_search_result* r, double* out);
ns_status ns_search_result_best_violation(const ns_search_result* r, double* v_a,
                                          double* v_b);
ns_status ns_search_result_evals(const ns_search_result* r, int64_t* out);
ns_status ns_search_result_restarts(const ns_search_result* r, int64_t* out);
ns_status ns_search_result_seed(const ns_search_result* r, uint64_t* out);
ns_status ns_search_result_best_params(const ns_search_result* r, double u_params[16],
                                       double w_params[2]);
ns_status ns_search_result_history_size(const ns_search_result* r, int64_t* out);
ns_status ns_search_result_history_entry(const ns_search_result* r, int64_t index,
                                         int32_t* restart, double* total);
void ns_search_result_free(ns_search_result* r);

typedef struct ns_sweep_summary {
  int64_t samples;
  double min_total, median_total, max_total;
  double min_max_constraint, median_max_constraint, max_max_constraint;
  int64_t below_tol; /* samples whose total residual fell below tol */
} ns_sweep_summary;

/* Haar-random (U, w) sweep of the splitting diagnostics. */
ns_status ns_haar_sweep(int64_t samples, uint64_t seed, const ns_grid* grid, double tol,
                        ns_sweep_summary* out);

/* ---- combining protocol ------------------------------------------------- */

typedef struct ns_combine_analytic {
  double p_even, p_odd; /* both exactly 1/2 for protocol inputs */
  double fidelity_even; /* branch output vs. reference; 1 up to rounding */
  double fidelity_odd;
  double final_even[4]; /* branch outputs, (re, im) pairs of 2 amplitudes */
  double final_odd[4];
} ns_combine_analytic;

ns_status ns_combine_analytic_compute(double theta, double phi,
                                      ns_combine_analytic* out);

typedef struct ns_combine_stats {
  int64_t shots, n_even, n_odd;
  double p_hat_even;
  double fidelity_even; /* min over shots; 1.0 when a branch never occurred */
  double fidelity_odd;
} ns_combine_stats;

ns_status ns_combine_statistics(double theta, double phi, int64_t shots, uint64_t seed,
                                ns_combine_stats* out);

/* One protocol run: outcome flag (0 = even, 1 = odd) and the final qubit
 * amplitudes as (re, im) pairs. */
ns_status ns_combine_single(double theta, double phi, uint64_t seed,
                            int32_t* outcome_is_odd, double final_state[4]);

#ifdef __cplusplus
}
#endif

#endif /* NOSPLIT_NOSPLIT_H_ */
