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

#include "nosplit/nosplit.h"

#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "combiner.hpp"
#include "gatelang.hpp"
#include "searcher.hpp"
#include "splitcheck.hpp"

struct ns_unitary {
  nosplit::CMatrix m;
};

struct ns_grid {
  nosplit::AngleGrid g;
};

struct ns_search_result {
  nosplit::SearchResult r;
};

namespace {

using nosplit::Error;
using nosplit::ErrorCode;

thread_local std::string t_last_error;

ns_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return NS_ERROR_INVALID_ARGUMENT;
    case ErrorCode::non_finite: return NS_ERROR_NON_FINITE;
    case ErrorCode::not_hermitian: return NS_ERROR_NOT_HERMITIAN;
    case ErrorCode::not_unitary: return NS_ERROR_NOT_UNITARY;
    case ErrorCode::rank_deficient: return NS_ERROR_RANK_DEFICIENT;
    case ErrorCode::dimension_mismatch: return NS_ERROR_DIMENSION_MISMATCH;
    case ErrorCode::parse: return NS_ERROR_PARSE;
    case ErrorCode::entangled_residue: return NS_ERROR_ENTANGLED_RESIDUE;
    case ErrorCode::numerical: return NS_ERROR_NUMERICAL;
  }
  return NS_ERROR_INTERNAL;
}

ns_status fail(ns_status status, const std::string& message) {
  t_last_error = message;
  return status;
}

// Runs the body, translating exceptions into status codes.
template <typename F>
ns_status guarded(F&& body) {
  try {
    ns_status s = body();
    if (s == NS_OK) t_last_error.clear();
    return s;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(NS_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(NS_ERROR_INTERNAL, "unknown error");
  }
}

nosplit::PureState ancilla_state(double w_theta, double w_phi) {
  return nosplit::bloch_state(nosplit::wrap_bloch(w_theta, w_phi));
}

void write_density(const nosplit::DensityMatrix2& rho, double out[8]) {
  int k = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      out[k++] = rho.entries()(r, c).real();
      out[k++] = rho.entries()(r, c).imag();
    }
}

nosplit::DensityMatrix2 read_density(const double in[8]) {
  nosplit::CMatrix m(2, 2);
  int k = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      m(r, c) = nosplit::cplx(in[k], in[k + 1]);
      k += 2;
    }
  return nosplit::DensityMatrix2(m);
}

void write_amplitudes(const nosplit::PureState& s, double out[4]) {
  out[0] = s.amplitude(0).real();
  out[1] = s.amplitude(0).imag();
  out[2] = s.amplitude(1).real();
  out[3] = s.amplitude(1).imag();
}

}  // namespace

extern "C" {

const char* ns_status_name(ns_status status) {
  switch (status) {
    case NS_OK: return "NS_OK";
    case NS_ERROR_NULL_POINTER: return "NS_ERROR_NULL_POINTER";
    case NS_ERROR_INVALID_ARGUMENT: return "NS_ERROR_INVALID_ARGUMENT";
    case NS_ERROR_NON_FINITE: return "NS_ERROR_NON_FINITE";
    case NS_ERROR_NOT_HERMITIAN: return "NS_ERROR_NOT_HERMITIAN";
    case NS_ERROR_NOT_UNITARY: return "NS_ERROR_NOT_UNITARY";
    case NS_ERROR_RANK_DEFICIENT: return "NS_ERROR_RANK_DEFICIENT";
    case NS_ERROR_DIMENSION_MISMATCH: return "NS_ERROR_DIMENSION_MISMATCH";
    case NS_ERROR_PARSE: return "NS_ERROR_PARSE";
    case NS_ERROR_ENTANGLED_RESIDUE: return "NS_ERROR_ENTANGLED_RESIDUE";
    case NS_ERROR_NUMERICAL: return "NS_ERROR_NUMERICAL";
    case NS_ERROR_INTERNAL: return "NS_ERROR_INTERNAL";
  }
  return "NS_ERROR_UNKNOWN";
}

const char* ns_last_error_message(void) { return t_last_error.c_str(); }

const char* ns_version(void) { return "0.1.0"; }

ns_status ns_unitary_identity(ns_unitary** out) {
  if (!out) return fail(NS_ERROR_NULL_POINTER, "out is NULL");
  return guarded([&] {
    *out = new ns_unitary{nosplit::CMatrix::identity(4)};
    return NS_OK;
  });
}

ns_status ns_unitary_cnot(ns_unitary** out) {
  if (!out) return fail(NS_ERROR_NULL_POINTER, "out is NULL");
  return guarded([&] {
    *out = new ns_unitary{nosplit::cnot_matrix()};
    return NS_OK;
  });
}

ns_status ns_unitary_from_gate_text(const char* text, const char* source_name,
                                    ns_unitary** out, ns_parse_error* parse_error_out) {
  if (!text || !out) return fail(NS_ERROR_NULL_POINTER, "text/out is NULL");
  if (parse_error_out) {
    parse_error_out->line = 0;
    parse_error_out->column = 0;
    parse_error_out->message[0] = '\0';
  }
  try {
    nosplit::GateProgram prog =
        nosplit::parse_program(text, source_name ? source_name : "<memory>");
    *out = new ns_unitary{nosplit::compile_program(prog)};
    t_last_error.clear();
    return NS_OK;
  } catch (const nosplit::ParseError& e) {
    if (parse_error_out) {
      parse_error_out->line = e.line();
      parse_error_out->column = e.column();
      std::strncpy(parse_error_out->message, e.detail().c_str(),
                   sizeof(parse_error_out->message) - 1);
      parse_error_out->message[sizeof(parse_error_out->message) - 1] = '\0';
    }
    return fail(NS_ERROR_PARSE, e.what());
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(NS_ERROR_INTERNAL, e.what());
  }
}

ns_status ns_unitary_from_generator(const double params[16], ns_unitary** out) {
  if (!params || !out) return fail(NS_ERROR_NULL_POINTER, "params/out is NULL");
  return guarded([&] {
    *out = new ns_unitary{nosplit::param_to_unitary(std::span<const double>(params, 16))};
    return NS_OK;
  });
}

ns_status ns_unitary_haar(uint64_t seed, ns_unitary** out) {
  if (!out) return fail(NS_ERROR_NULL_POINTER, "out is NULL");
  return guarded([&] {
    nosplit::Rng rng(seed);
    *out = new ns_unitary{nosplit::haar_unitary(rng)};
    return NS_OK;
  });
}

ns_status ns_unitary_entry(const ns_unitary* u, int32_t row, int32_t col, double* re,
                           double* im) {
  if (!u || !re || !im) return fail(NS_ERROR_NULL_POINTER, "u/re/im is NULL");
  if (row < 0 || row > 3 || col < 0 || col > 3)
    return fail(NS_ERROR_INVALID_ARGUMENT, "entry index out of range");
  *re = u->m(row, col).real();
  *im = u->m(row, col).imag();
  return NS_OK;
}

void ns_unitary_free(ns_unitary* u) { delete u; }

ns_status ns_grid_create(int32_t theta_steps, int32_t phi_steps, ns_grid** out) {
  if (!out) return fail(NS_ERROR_NULL_POINTER, "out is NULL");
  return guarded([&] {
    *out = new ns_grid{nosplit::AngleGrid(theta_steps, phi_steps)};
    return NS_OK;
  });
}

ns_status ns_grid_theta_count(const ns_grid* grid, int32_t* out) {
  if (!grid || !out) return fail(NS_ERROR_NULL_POINTER, "grid/out is NULL");
  *out = static_cast<int32_t>(grid->g.thetas.size());
  return NS_OK;
}

ns_status ns_grid_phi_count(const ns_grid* grid, int32_t* out) {
  if (!grid || !out) return fail(NS_ERROR_NULL_POINTER, "grid/out is NULL");
  *out = static_cast<int32_t>(grid->g.phis.size());
  return NS_OK;
}

ns_status ns_grid_theta(const ns_grid* grid, int32_t index, double* out) {
  if (!grid || !out) return fail(NS_ERROR_NULL_POINTER, "grid/out is NULL");
  if (index < 0 || index >= static_cast<int32_t>(grid->g.thetas.size()))
    return fail(NS_ERROR_INVALID_ARGUMENT, "theta index out of range");
  *out = grid->g.thetas[static_cast<std::size_t>(index)];
  return NS_OK;
}

ns_status ns_grid_phi(const ns_grid* grid, int32_t index, double* out) {
  if (!grid || !out) return fail(NS_ERROR_NULL_POINTER, "grid/out is NULL");
  if (index < 0 || index >= static_cast<int32_t>(grid->g.phis.size()))
    return fail(NS_ERROR_INVALID_ARGUMENT, "phi index out of range");
  *out = grid->g.phis[static_cast<std::size_t>(index)];
  return NS_OK;
}

void ns_grid_free(ns_grid* grid) { delete grid; }

ns_status ns_violation_a(const ns_unitary* u, double w_theta, double w_phi,
                         const ns_grid* grid, double* out) {
  if (!u || !grid || !out) return fail(NS_ERROR_NULL_POINTER, "u/grid/out is NULL");
  return guarded([&] {
    *out = nosplit::violation_a(u->m, ancilla_state(w_theta, w_phi), grid->g);
    return NS_OK;
  });
}

ns_status ns_violation_b(const ns_unitary* u, double w_theta, double w_phi,
                         const ns_grid* grid, double* out) {
  if (!u || !grid || !out) return fail(NS_ERROR_NULL_POINTER, "u/grid/out is NULL");
  return guarded([&] {
    *out = nosplit::violation_b(u->m, ancilla_state(w_theta, w_phi), grid->g);
    return NS_OK;
  });
}

ns_status ns_splitting_residual(const ns_unitary* u, double w_theta, double w_phi,
                                const ns_grid* grid, ns_split_violation* out) {
  if (!u || !grid || !out) return fail(NS_ERROR_NULL_POINTER, "u/grid/out is NULL");
  return guarded([&] {
    const nosplit::SplitViolation sv =
        nosplit::splitting_residual(u->m, ancilla_state(w_theta, w_phi), grid->g);
    out->v_a = sv.v_a;
    out->v_b = sv.v_b;
    out->total = sv.total;
    return NS_OK;
  });
}

ns_status ns_output_entanglement(const ns_unitary* u, double w_theta, double w_phi,
                                 const ns_grid* grid, double* out) {
  if (!u || !grid || !out) return fail(NS_ERROR_NULL_POINTER, "u/grid/out is NULL");
  return guarded([&] {
    *out = nosplit::output_entanglement(u->m, ancilla_state(w_theta, w_phi), grid->g);
    return NS_OK;
  });
}

ns_status ns_proof_coefficients_compute(const ns_unitary* u, double w_theta,
                                        double w_phi, ns_proof_coefficients* out) {
  if (!u || !out) return fail(NS_ERROR_NULL_POINTER, "u/out is NULL");
  return guarded([&] {
    const nosplit::ProofCoefficients pc =
        nosplit::proof_coefficients(u->m, ancilla_state(w_theta, w_phi));
    out->r0 = pc.r0;
    out->r1 = pc.r1;
    out->alpha_re = pc.alpha.real();
    out->alpha_im = pc.alpha.imag();
    out->c_re = pc.c.real();
    out->c_im = pc.c.imag();
    out->d_re = pc.d.real();
    out->d_im = pc.d.imag();
    out->degenerate = pc.degenerate ? 1 : 0;
    return NS_OK;
  });
}

ns_status ns_constraint_residuals(const ns_proof_coefficients* pc, double out[7]) {
  if (!pc || !out) return fail(NS_ERROR_NULL_POINTER, "pc/out is NULL");
  return guarded([&] {
    const nosplit::ProofCoefficients cc(pc->r0, pc->r1,
                                        nosplit::cplx(pc->alpha_re, pc->alpha_im),
                                        nosplit::cplx(pc->c_re, pc->c_im),
                                        nosplit::cplx(pc->d_re, pc->d_im));
    const nosplit::ConstraintResiduals res = nosplit::constraint_residuals(cc);
    std::copy(res.begin(), res.end(), out);
    return NS_OK;
  });
}

ns_status ns_cnot_marginals(double theta, double phi, double rho_a[8], double rho_b[8]) {
  if (!rho_a || !rho_b) return fail(NS_ERROR_NULL_POINTER, "rho_a/rho_b is NULL");
  return guarded([&] {
    const nosplit::CnotDemo demo = nosplit::cnot_demo(nosplit::BlochAngles(theta, phi));
    write_density(demo.rho_a, rho_a);
    write_density(demo.rho_b, rho_b);
    return NS_OK;
  });
}

ns_status ns_trace_distance(const double rho[8], const double sigma[8], double* out) {
  if (!rho || !sigma || !out) return fail(NS_ERROR_NULL_POINTER, "rho/sigma/out is NULL");
  return guarded([&] {
    *out = nosplit::trace_distance(read_density(rho), read_density(sigma));
    return NS_OK;
  });
}

void ns_search_options_init(ns_search_options* opts) {
  if (!opts) return;
  opts->restarts = 100;
  opts->max_evals_per_restart = 20000;
  opts->simplex_tol = 1e-10;
  opts->seed = 0;
  opts->theta_steps = 13;
  opts->phi_steps = 16;
  opts->threads = 0;
}

ns_status ns_search_run(const ns_search_options* opts, ns_search_result** out) {
  if (!opts || !out) return fail(NS_ERROR_NULL_POINTER, "opts/out is NULL");
  return guarded([&] {
    nosplit::SearchOptions o;
    o.restarts = opts->restarts;
    o.max_evals_per_restart = opts->max_evals_per_restart;
    o.simplex_tol = opts->simplex_tol;
    o.seed = opts->seed;
    o.grid = nosplit::AngleGrid(opts->theta_steps, opts->phi_steps);
    o.threads = opts->threads;
    *out = new ns_search_result{nosplit::search_splitter(o)};
    return NS_OK;
  });
}

ns_status ns_search_result_best_total(const ns_search_result* r, double* out) {
  if (!r || !out) return fail(NS_ERROR_NULL_POINTER, "r/out is NULL");
  *out = r->r.best_total;
  return NS_OK;
}

ns_status ns_search_result_best_violation(const ns_search_result* r, double* v_a,
                                          double* v_b) {
  if (!r || !v_a || !v_b) return fail(NS_ERROR_NULL_POINTER, "r/v_a/v_b is NULL");
  *v_a = r->r.best_v_a;
  *v_b = r->r.best_v_b;
  return NS_OK;
}

ns_status ns_search_result_evals(const ns_search_result* r, int64_t* out) {
  if (!r || !out) return fail(NS_ERROR_NULL_POINTER, "r/out is NULL");
  *out = r->r.evals;
  return NS_OK;
}

ns_status ns_search_result_restarts(const ns_search_result* r, int64_t* out) {
  if (!r || !out) return fail(NS_ERROR_NULL_POINTER, "r/out is NULL");
  *out = r->r.restarts;
  return NS_OK;
}

ns_status ns_search_result_seed(const ns_search_result* r, uint64_t* out) {
  if (!r || !out) return fail(NS_ERROR_NULL_POINTER, "r/out is NULL");
  *out = r->r.seed;
  return NS_OK;
}

ns_status ns_search_result_best_params(const ns_search_result* r, double u_params[16],
                                       double w_params[2]) {
  if (!r || !u_params || !w_params)
    return fail(NS_ERROR_NULL_POINTER, "r/u_params/w_params is NULL");
  std::copy(r->r.best_params.u_params.begin(), r->r.best_params.u_params.end(),
            u_params);
  std::copy(r->r.best_params.w_params.begin(), r->r.best_params.w_params.end(),
            w_params);
  return NS_OK;
}

ns_status ns_search_result_history_size(const ns_search_result* r, int64_t* out) {
  if (!r || !out) return fail(NS_ERROR_NULL_POINTER, "r/out is NULL");
  *out = static_cast<int64_t>(r->r.history.size());
  return NS_OK;
}

ns_status ns_search_result_history_entry(const ns_search_result* r, int64_t index,
                                         int32_t* restart, double* total) {
  if (!r || !restart || !total)
    return fail(NS_ERROR_NULL_POINTER, "r/restart/total is NULL");
  if (index < 0 || index >= static_cast<int64_t>(r->r.history.size()))
    return fail(NS_ERROR_INVALID_ARGUMENT, "history index out of range");
  *restart = r->r.history[static_cast<std::size_t>(index)].restart;
  *total = r->r.history[static_cast<std::size_t>(index)].total;
  return NS_OK;
}

void ns_search_result_free(ns_search_result* r) { delete r; }

ns_status ns_haar_sweep(int64_t samples, uint64_t seed, const ns_grid* grid, double tol,
                        ns_sweep_summary* out) {
  if (!grid || !out) return fail(NS_ERROR_NULL_POINTER, "grid/out is NULL");
  return guarded([&] {
    nosplit::require(tol > 0.0, ErrorCode::invalid_argument,
                     "ns_haar_sweep: tol must be positive");
    std::vector<nosplit::SweepSample> sw = nosplit::haar_sweep(samples, seed, grid->g);
    std::vector<double> totals, maxes;
    totals.reserve(sw.size());
    maxes.reserve(sw.size());
    int64_t below = 0;
    for (const auto& s : sw) {
      totals.push_back(s.total);
      maxes.push_back(s.max_constraint);
      if (s.total < tol) ++below;
    }
    auto median = [](std::vector<double> v) {
      std::sort(v.begin(), v.end());
      const std::size_t n = v.size();
      return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    out->samples = samples;
    out->min_total = *std::min_element(totals.begin(), totals.end());
    out->max_total = *std::max_element(totals.begin(), totals.end());
    out->median_total = median(totals);
    out->min_max_constraint = *std::min_element(maxes.begin(), maxes.end());
    out->max_max_constraint = *std::max_element(maxes.begin(), maxes.end());
    out->median_max_constraint = median(maxes);
    out->below_tol = below;
    return NS_OK;
  });
}

ns_status ns_combine_analytic_compute(double theta, double phi,
                                      ns_combine_analytic* out) {
  if (!out) return fail(NS_ERROR_NULL_POINTER, "out is NULL");
  return guarded([&] {
    const nosplit::BlochAngles angles(theta, phi);
    const nosplit::PureState input = nosplit::combiner_input(angles);
    auto [even, odd] = nosplit::parity_branches(input);
    out->p_even = even.probability;
    out->p_odd = odd.probability;

    auto finish = [](const nosplit::ParityOutcome& branch) {
      nosplit::require(branch.post_state.has_value(), ErrorCode::numerical,
                       "combine: branch probability vanished for protocol input");
      const nosplit::PureState after = nosplit::xor_gate(*branch.post_state);
      const nosplit::SchmidtDecomp sd = nosplit::schmidt(after);
      nosplit::require(sd.r1 < 1e-10, ErrorCode::entangled_residue,
                       "combine: residual entanglement before discard");
      return sd.basis_a[0];
    };
    const nosplit::PureState f_even = finish(even);
    const nosplit::PureState f_odd = finish(odd);
    out->fidelity_even = nosplit::fidelity_pure(nosplit::even_reference(angles), f_even);
    out->fidelity_odd = nosplit::fidelity_pure(nosplit::odd_reference(angles), f_odd);
    write_amplitudes(f_even, out->final_even);
    write_amplitudes(f_odd, out->final_odd);
    return NS_OK;
  });
}

ns_status ns_combine_statistics(double theta, double phi, int64_t shots, uint64_t seed,
                                ns_combine_stats* out) {
  if (!out) return fail(NS_ERROR_NULL_POINTER, "out is NULL");
  return guarded([&] {
    const nosplit::BlochAngles angles(theta, phi);
    nosplit::Rng rng(seed);
    const nosplit::CombineStats st = nosplit::combiner_statistics(angles, shots, rng);
    out->shots = shots;
    out->n_even = st.n_even;
    out->n_odd = st.n_odd;
    out->p_hat_even = static_cast<double>(st.n_even) / static_cast<double>(shots);
    out->fidelity_even = st.fidelity_even;
    out->fidelity_odd = st.fidelity_odd;
    return NS_OK;
  });
}

ns_status ns_combine_single(double theta, double phi, uint64_t seed,
                            int32_t* outcome_is_odd, double final_state[4]) {
  if (!outcome_is_odd || !final_state)
    return fail(NS_ERROR_NULL_POINTER, "outcome_is_odd/final_state is NULL");
  return guarded([&] {
    const nosplit::BlochAngles angles(theta, phi);
    nosplit::Rng rng(seed);
    const nosplit::CombineResult r = nosplit::run_combiner(angles, rng);
    *outcome_is_odd = (r.outcome == nosplit::Parity::odd) ? 1 : 0;
    write_amplitudes(r.final_state, final_state);
    return NS_OK;
  });
}

}  // extern "C"
