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

// Command-line front end. Talks to the library exclusively through the
// shared-library C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nosplit/nosplit.h"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitNumerical = 3;

// Lossless double serialization: up to 17 significant digits round-trips any
// IEEE double exactly.
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_json(const ordered_json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        out += ordered_json(key).dump();
        out += ": ";
        dump_json(value, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_json(value, out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case ordered_json::value_t::number_float:
      if (std::isfinite(j.get<double>()))
        out += format_double(j.get<double>());
      else
        out += "null";
      return;
    default:
      out += j.dump();
      return;
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += "\"\"";
    else quoted += ch;
  }
  quoted += "\"";
  return quoted;
}

void flatten_csv(const ordered_json& j, const std::string& path,
                 std::vector<std::pair<std::string, std::string>>& rows) {
  switch (j.type()) {
    case ordered_json::value_t::object:
      for (const auto& [key, value] : j.items())
        flatten_csv(value, path.empty() ? key : path + "." + key, rows);
      return;
    case ordered_json::value_t::array: {
      int i = 0;
      for (const auto& value : j) flatten_csv(value, path + "." + std::to_string(i++), rows);
      return;
    }
    case ordered_json::value_t::number_float:
      rows.emplace_back(path, std::isfinite(j.get<double>())
                                  ? format_double(j.get<double>())
                                  : std::string("null"));
      return;
    case ordered_json::value_t::string:
      rows.emplace_back(path, csv_escape(j.get<std::string>()));
      return;
    default:
      rows.emplace_back(path, j.dump());
      return;
  }
}

void emit(const ordered_json& doc, const std::string& output_format) {
  if (output_format == "csv") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten_csv(doc, "", rows);
    std::string out = "key,value\n";
    for (const auto& [k, v] : rows) out += csv_escape(k) + "," + v + "\n";
    std::fputs(out.c_str(), stdout);
  } else {
    std::string out;
    dump_json(doc, out, 0);
    out += "\n";
    std::fputs(out.c_str(), stdout);
  }
}

// Maps library failures onto the documented exit codes and prints the
// diagnostic. Parse errors are reported separately (they carry a position).
int report_failure(const char* what, ns_status status) {
  std::fprintf(stderr, "error: %s failed (%s): %s\n", what, ns_status_name(status),
               ns_last_error_message());
  switch (status) {
    case NS_ERROR_PARSE:
      return kExitParse;
    case NS_ERROR_INVALID_ARGUMENT:
    case NS_ERROR_NULL_POINTER:
      return kExitUsage;
    default:
      return kExitNumerical;
  }
}

struct UnitaryHandle {
  ns_unitary* ptr = nullptr;
  ~UnitaryHandle() { ns_unitary_free(ptr); }
};

struct GridHandle {
  ns_grid* ptr = nullptr;
  ~GridHandle() { ns_grid_free(ptr); }
};

struct SearchHandle {
  ns_search_result* ptr = nullptr;
  ~SearchHandle() { ns_search_result_free(ptr); }
};

int load_circuit(const std::string& path, UnitaryHandle& u) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot open circuit file '%s'\n", path.c_str());
    return kExitUsage;
  }
  std::ostringstream text;
  text << in.rdbuf();
  ns_parse_error perr;
  const ns_status s =
      ns_unitary_from_gate_text(text.str().c_str(), path.c_str(), &u.ptr, &perr);
  if (s == NS_ERROR_PARSE) {
    std::fprintf(stderr, "error: %s: parse error at line %d, column %d: %s\n",
                 path.c_str(), perr.line, perr.column, perr.message);
    return kExitParse;
  }
  if (s != NS_OK) return report_failure("circuit compilation", s);
  return kExitOk;
}

ordered_json complex_json(double re, double im) {
  return ordered_json{{"re", re}, {"im", im}};
}

struct CommonFlags {
  std::uint64_t seed = 0;
  int theta_steps = 13;
  int phi_steps = 16;
  long restarts = 100;
  long shots = 100000;
  double tol = 1e-6;
  std::string circuit;
  double theta = 0.0;
  double phi = 0.0;
  double w_theta = 0.0;
  double w_phi = 0.0;
  long samples = 1000;
  long max_evals = 20000;
  double simplex_tol = 1e-10;
  int threads = 0;
  std::string output = "json";
};

int run_cnot_demo(const CommonFlags& f, bool single_point, bool grid_flags_used) {
  ordered_json doc;
  doc["command"] = "cnot-demo";

  ordered_json rows = ordered_json::array();
  double max_dev = 0.0;

  auto tabulate = [&max_dev](double theta, double phi, ordered_json& row_out) -> ns_status {
    double rho_a[8], rho_b[8];
    const ns_status s = ns_cnot_marginals(theta, phi, rho_a, rho_b);
    if (s != NS_OK) return s;
    const double c2 = std::cos(theta / 2.0) * std::cos(theta / 2.0);
    const double s2 = 1.0 - c2;
    const double expected[8] = {c2, 0.0, 0.0, 0.0, 0.0, 0.0, s2, 0.0};
    for (const double* rho : {rho_a, rho_b})
      for (int k = 0; k < 8; k += 2) {
        const double dre = rho[k] - expected[k];
        const double dim = rho[k + 1] - expected[k + 1];
        max_dev = std::max(max_dev, std::hypot(dre, dim));
      }
    row_out = ordered_json{{"theta", theta},
                           {"phi", phi},
                           {"rho_a_00", rho_a[0]},
                           {"rho_a_11", rho_a[6]},
                           {"rho_b_00", rho_b[0]},
                           {"rho_b_11", rho_b[6]},
                           {"expected_00", c2}};
    return NS_OK;
  };

  if (single_point) {
    if (grid_flags_used)
      std::fprintf(stderr,
                   "warning: --theta/--phi given; grid flags ignored in "
                   "single-point mode\n");
    doc["params"] = ordered_json{{"mode", "single-point"}, {"theta", f.theta}, {"phi", f.phi}};
    ordered_json row;
    if (ns_status s = tabulate(f.theta, f.phi, row); s != NS_OK)
      return report_failure("cnot-demo", s);
    rows.push_back(row);
    doc["result"] = ordered_json{{"max_marginal_deviation", max_dev}, {"rows", rows}};
  } else {
    doc["params"] = ordered_json{
        {"mode", "grid"}, {"theta_steps", f.theta_steps}, {"phi_steps", f.phi_steps}};
    GridHandle grid;
    if (ns_status s = ns_grid_create(f.theta_steps, f.phi_steps, &grid.ptr); s != NS_OK)
      return report_failure("grid construction", s);
    UnitaryHandle cnot;
    if (ns_status s = ns_unitary_cnot(&cnot.ptr); s != NS_OK)
      return report_failure("cnot-demo", s);
    double phi_dependence = 0.0;
    if (ns_status s = ns_violation_a(cnot.ptr, 0.0, 0.0, grid.ptr, &phi_dependence);
        s != NS_OK)
      return report_failure("cnot-demo", s);

    std::int32_t nt = 0, np = 0;
    ns_grid_theta_count(grid.ptr, &nt);
    ns_grid_phi_count(grid.ptr, &np);
    for (std::int32_t i = 0; i < nt; ++i) {
      double theta = 0.0;
      ns_grid_theta(grid.ptr, i, &theta);
      ordered_json row;
      for (std::int32_t k = 0; k < np; ++k) {
        double phi = 0.0;
        ns_grid_phi(grid.ptr, k, &phi);
        if (ns_status s = tabulate(theta, phi, row); s != NS_OK)
          return report_failure("cnot-demo", s);
      }
      row.erase("phi");  // marginals are phi-independent; the row stands for all phi
      rows.push_back(row);
    }
    doc["result"] = ordered_json{{"phi_dependence_rho_a", phi_dependence},
                                 {"max_marginal_deviation", max_dev},
                                 {"rows", rows}};
  }
  doc["version"] = ns_version();
  emit(doc, f.output);
  return kExitOk;
}

int run_residual(const CommonFlags& f) {
  UnitaryHandle u;
  if (int rc = load_circuit(f.circuit, u); rc != kExitOk) return rc;
  GridHandle grid;
  if (ns_status s = ns_grid_create(f.theta_steps, f.phi_steps, &grid.ptr); s != NS_OK)
    return report_failure("grid construction", s);

  ns_split_violation sv;
  if (ns_status s = ns_splitting_residual(u.ptr, f.w_theta, f.w_phi, grid.ptr, &sv);
      s != NS_OK)
    return report_failure("residual evaluation", s);
  double ent = 0.0;
  if (ns_status s = ns_output_entanglement(u.ptr, f.w_theta, f.w_phi, grid.ptr, &ent);
      s != NS_OK)
    return report_failure("entanglement evaluation", s);

  ordered_json doc;
  doc["command"] = "residual";
  doc["params"] = ordered_json{{"circuit", f.circuit},
                               {"w_theta", f.w_theta},
                               {"w_phi", f.w_phi},
                               {"theta_steps", f.theta_steps},
                               {"phi_steps", f.phi_steps}};
  doc["result"] = ordered_json{{"v_a", sv.v_a},
                               {"v_b", sv.v_b},
                               {"total", sv.total},
                               {"output_entanglement", ent}};
  doc["version"] = ns_version();
  emit(doc, f.output);
  return kExitOk;
}

int run_constraints(const CommonFlags& f) {
  UnitaryHandle u;
  if (int rc = load_circuit(f.circuit, u); rc != kExitOk) return rc;

  ns_proof_coefficients pc;
  if (ns_status s = ns_proof_coefficients_compute(u.ptr, f.w_theta, f.w_phi, &pc);
      s != NS_OK)
    return report_failure("proof-coefficient extraction", s);
  double res[7];
  if (ns_status s = ns_constraint_residuals(&pc, res); s != NS_OK)
    return report_failure("constraint residuals", s);

  double max_res = 0.0;
  ordered_json res_list = ordered_json::array();
  for (double r : res) {
    res_list.push_back(r);
    max_res = std::max(max_res, r);
  }

  ordered_json doc;
  doc["command"] = "constraints";
  doc["params"] = ordered_json{{"circuit", f.circuit},
                               {"w_theta", f.w_theta},
                               {"w_phi", f.w_phi}};
  doc["result"] = ordered_json{{"r0", pc.r0},
                               {"r1", pc.r1},
                               {"alpha", complex_json(pc.alpha_re, pc.alpha_im)},
                               {"c", complex_json(pc.c_re, pc.c_im)},
                               {"d", complex_json(pc.d_re, pc.d_im)},
                               {"degenerate", pc.degenerate != 0},
                               {"residuals", res_list},
                               {"max_residual", max_res}};
  doc["version"] = ns_version();
  emit(doc, f.output);
  return kExitOk;
}

int run_sweep(const CommonFlags& f) {
  GridHandle grid;
  if (ns_status s = ns_grid_create(f.theta_steps, f.phi_steps, &grid.ptr); s != NS_OK)
    return report_failure("grid construction", s);
  ns_sweep_summary sum;
  if (ns_status s = ns_haar_sweep(f.samples, f.seed, grid.ptr, f.tol, &sum); s != NS_OK)
    return report_failure("sweep", s);

  ordered_json doc;
  doc["command"] = "sweep";
  doc["params"] = ordered_json{{"samples", f.samples},
                               {"seed", f.seed},
                               {"theta_steps", f.theta_steps},
                               {"phi_steps", f.phi_steps},
                               {"tol", f.tol}};
  doc["result"] =
      ordered_json{{"total", ordered_json{{"min", sum.min_total},
                                          {"median", sum.median_total},
                                          {"max", sum.max_total}}},
                   {"max_constraint", ordered_json{{"min", sum.min_max_constraint},
                                                   {"median", sum.median_max_constraint},
                                                   {"max", sum.max_max_constraint}}},
                   {"below_tol", sum.below_tol}};
  doc["version"] = ns_version();
  emit(doc, f.output);
  return kExitOk;
}

int run_search(const CommonFlags& f) {
  ns_search_options opts;
  ns_search_options_init(&opts);
  opts.restarts = f.restarts;
  opts.max_evals_per_restart = f.max_evals;
  opts.simplex_tol = f.simplex_tol;
  opts.seed = f.seed;
  opts.theta_steps = f.theta_steps;
  opts.phi_steps = f.phi_steps;
  opts.threads = f.threads;

  SearchHandle result;
  if (ns_status s = ns_search_run(&opts, &result.ptr); s != NS_OK)
    return report_failure("search", s);

  double best_total = 0.0, v_a = 0.0, v_b = 0.0;
  std::int64_t evals = 0, restarts = 0, hist_size = 0;
  std::uint64_t seed = 0;
  double u_params[16], w_params[2];
  ns_search_result_best_total(result.ptr, &best_total);
  ns_search_result_best_violation(result.ptr, &v_a, &v_b);
  ns_search_result_evals(result.ptr, &evals);
  ns_search_result_restarts(result.ptr, &restarts);
  ns_search_result_seed(result.ptr, &seed);
  ns_search_result_best_params(result.ptr, u_params, w_params);
  ns_search_result_history_size(result.ptr, &hist_size);

  ordered_json history = ordered_json::array();
  for (std::int64_t i = 0; i < hist_size; ++i) {
    std::int32_t restart = 0;
    double total = 0.0;
    ns_search_result_history_entry(result.ptr, i, &restart, &total);
    history.push_back(ordered_json{{"restart", restart}, {"total", total}});
  }
  ordered_json u_list = ordered_json::array();
  for (double p : u_params) u_list.push_back(p);
  ordered_json w_list = ordered_json::array();
  for (double p : w_params) w_list.push_back(p);

  ordered_json doc;
  doc["command"] = "search";
  doc["params"] = ordered_json{{"restarts", f.restarts},
                               {"seed", f.seed},
                               {"max_evals_per_restart", f.max_evals},
                               {"simplex_tol", f.simplex_tol},
                               {"theta_steps", f.theta_steps},
                               {"phi_steps", f.phi_steps},
                               {"tol", f.tol}};
  doc["result"] = ordered_json{{"best_total", best_total},
                               {"splitter_found", best_total < f.tol},
                               {"best_v_a", v_a},
                               {"best_v_b", v_b},
                               {"evals", evals},
                               {"best_u_params", u_list},
                               {"best_w_params", w_list},
                               {"history", history}};
  doc["version"] = ns_version();
  emit(doc, f.output);
  return kExitOk;
}

int run_combine(const CommonFlags& f) {
  ns_combine_analytic an;
  if (ns_status s = ns_combine_analytic_compute(f.theta, f.phi, &an); s != NS_OK)
    return report_failure("combine (analytic)", s);
  ns_combine_stats st;
  if (ns_status s = ns_combine_statistics(f.theta, f.phi, f.shots, f.seed, &st);
      s != NS_OK)
    return report_failure("combine (monte carlo)", s);

  auto amp_pair = [](const double a[4]) {
    return ordered_json::array(
        {complex_json(a[0], a[1]), complex_json(a[2], a[3])});
  };

  ordered_json doc;
  doc["command"] = "combine";
  doc["params"] = ordered_json{
      {"theta", f.theta}, {"phi", f.phi}, {"shots", f.shots}, {"seed", f.seed}};
  doc["result"] = ordered_json{
      {"p_even", an.p_even},
      {"p_odd", an.p_odd},
      {"analytic", ordered_json{{"fidelity_even", an.fidelity_even},
                                {"fidelity_odd", an.fidelity_odd},
                                {"final_even", amp_pair(an.final_even)},
                                {"final_odd", amp_pair(an.final_odd)}}},
      {"monte_carlo", ordered_json{{"shots", st.shots},
                                   {"n_even", st.n_even},
                                   {"n_odd", st.n_odd},
                                   {"p_hat_even", st.p_hat_even},
                                   {"fidelity_even", st.fidelity_even},
                                   {"fidelity_odd", st.fidelity_odd}}}};
  doc["version"] = ns_version();
  emit(doc, f.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nosplit: numerical probes of splitting an unknown qubit's amplitude "
               "and phase into separate qubits"};
  app.set_version_flag("--version", ns_version());
  app.require_subcommand(1);

  CommonFlags f;

  auto add_grid_flags = [&](CLI::App* cmd) {
    cmd->add_option("--theta-steps", f.theta_steps, "theta samples over [0, pi]")
        ->capture_default_str();
    cmd->add_option("--phi-steps", f.phi_steps, "phi samples over [0, 2pi)")
        ->capture_default_str();
  };
  auto add_output_flag = [&](CLI::App* cmd) {
    cmd->add_option("--output", f.output, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };
  auto add_ancilla_flags = [&](CLI::App* cmd) {
    cmd->add_option("--w-theta", f.w_theta, "ancilla Bloch theta")->capture_default_str();
    cmd->add_option("--w-phi", f.w_phi, "ancilla Bloch phi")->capture_default_str();
  };

  CLI::App* cnot = app.add_subcommand(
      "cnot-demo", "tabulate the CNOT example marginals and their phi-dependence");
  add_grid_flags(cnot);
  add_output_flag(cnot);
  CLI::Option* opt_theta =
      cnot->add_option("--theta", f.theta, "single-point theta probe");
  CLI::Option* opt_phi = cnot->add_option("--phi", f.phi, "single-point phi probe");

  CLI::App* residual = app.add_subcommand(
      "residual", "splitting residual of a compiled gate program");
  residual->add_option("--circuit", f.circuit, "gate program file")->required();
  add_ancilla_flags(residual);
  add_grid_flags(residual);
  add_output_flag(residual);

  CLI::App* constraints = app.add_subcommand(
      "constraints", "proof coefficients and the seven constraint residuals");
  constraints->add_option("--circuit", f.circuit, "gate program file")->required();
  add_ancilla_flags(constraints);
  add_output_flag(constraints);

  CLI::App* sweep =
      app.add_subcommand("sweep", "Haar-random sweep of the splitting diagnostics");
  sweep->add_option("--samples", f.samples, "number of Haar samples")
      ->capture_default_str();
  sweep->add_option("--seed", f.seed, "random seed")->capture_default_str();
  sweep->add_option("--tol", f.tol, "numerical-zero threshold")->capture_default_str();
  add_grid_flags(sweep);
  add_output_flag(sweep);

  CLI::App* search = app.add_subcommand(
      "search", "multi-start derivative-free search for a splitting unitary");
  search->add_option("--restarts", f.restarts, "independent restarts")
      ->capture_default_str();
  search->add_option("--seed", f.seed, "random seed")->capture_default_str();
  search->add_option("--max-evals", f.max_evals, "objective evaluations per restart")
      ->capture_default_str();
  search->add_option("--simplex-tol", f.simplex_tol, "simplex spread tolerance")
      ->capture_default_str();
  search->add_option("--tol", f.tol, "numerical-zero threshold")->capture_default_str();
  search->add_option("--threads", f.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  add_grid_flags(search);
  add_output_flag(search);

  CLI::App* combine = app.add_subcommand(
      "combine", "simulate the parity + XOR combining protocol");
  combine->add_option("--theta", f.theta, "amplitude-qubit theta")->required();
  combine->add_option("--phi", f.phi, "phase-qubit phi")->required();
  combine->add_option("--shots", f.shots, "Monte Carlo shots")->capture_default_str();
  combine->add_option("--seed", f.seed, "random seed")->capture_default_str();
  add_output_flag(combine);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }

  if (cnot->parsed()) {
    const bool single = opt_theta->count() > 0 || opt_phi->count() > 0;
    if (single && (opt_theta->count() == 0 || opt_phi->count() == 0)) {
      std::fprintf(stderr, "error: single-point mode needs both --theta and --phi\n");
      return kExitUsage;
    }
    const bool grid_flags_used =
        cnot->get_option("--theta-steps")->count() > 0 ||
        cnot->get_option("--phi-steps")->count() > 0;
    return run_cnot_demo(f, single, grid_flags_used);
  }
  if (residual->parsed()) return run_residual(f);
  if (constraints->parsed()) return run_constraints(f);
  if (sweep->parsed()) return run_sweep(f);
  if (search->parsed()) return run_search(f);
  if (combine->parsed()) return run_combine(f);
  return kExitUsage;
}
