// Copyright 2026 The qflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qflow command-line driver. Exit codes: 0 success, 2 post-selection,
// stability or convergence failure, 3 configuration error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "manifest.h"
#include "qflow/analysis/fits.h"
#include "qflow/analysis/scan.h"
#include "qflow/analysis/spectral.h"
#include "qflow/cfd/analytical.h"
#include "qflow/cfd/systems.h"
#include "qflow/core/errors.h"
#include "qflow/core/io.h"
#include "qflow/core/parallel.h"
#include "qflow/qlsa/drivers.h"
#include "qflow/qlsa/hhl.h"
#include "qflow/qpp/dissipation.h"
#include "qflow/qsp/qsp1.h"
#include "qflow/qsp/qsp2.h"

namespace qflow::cli {
namespace {

using nlohmann::json;

struct Common {
  std::string config;
  std::string out = "qflow_out";
  unsigned long long seed = 0;
  int threads = 0;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  return f;
}

KeyValues load_optional(const std::string& path) { return path.empty() ? KeyValues{} : load_key_values(path); }

template <typename T>
T pick(const KeyValues& kv, const char* key, T fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  std::istringstream in(it->second);
  T v{};
  if (!(in >> v) || !in.eof()) throw ConfigError(std::string("key '") + key + "' has an invalid value '" + it->second + "'");
  return v;
}

json config_json(const FlowConfig& c) {
  return {{"n_grid", c.n_grid}, {"reynolds", c.reynolds}, {"dpdx", c.dpdx}, {"dt", c.dt},
          {"total_time", c.total_time}, {"steps", c.m()}, {"p_pad", c.p_pad},
          {"boundary", to_string(c.boundary)}, {"u_in", c.u_in}, {"domain_width", c.domain_width},
          {"wall_velocity", c.wall_velocity}};
}

void write_profiles(const std::string& path, const FlowConfig& c, const std::vector<Eigen::VectorXd>& profiles,
                    int first_step) {
  auto f = open_out(path);
  f << "step,time,y,u\n";
  const auto y = c.interior_positions();
  for (std::size_t s = 0; s < profiles.size(); ++s) {
    const int step = first_step + static_cast<int>(s);
    for (Eigen::Index i = 0; i < profiles[s].size(); ++i) {
      f << step << ',' << fmt(step * c.dt) << ',' << fmt(y[static_cast<std::size_t>(i)]) << ','
        << fmt(profiles[s][i]) << "\n";
    }
  }
}

void prepare(const Common& common) {
  if (common.threads < 0) throw ConfigError("--threads must be nonnegative");
  set_num_threads(common.threads);
}

// ---- solve ----

struct SolveArgs {
  Common common;
  std::string scheme;
  std::string method;
  int q_pe = -1;
  double t0 = -1.0;
};

void cmd_solve(const SolveArgs& a) {
  prepare(a.common);
  const KeyValues kv = load_optional(a.common.config);
  const FlowConfig c = flow_config_from(kv);
  const Scheme scheme = scheme_from_string(a.scheme.empty() ? pick<std::string>(kv, "scheme", "be1") : a.scheme);
  const std::string method = a.method.empty() ? pick<std::string>(kv, "method", "hhl") : a.method;
  if (method != "classical" && method != "hhl") throw ConfigError("unknown method '" + method + "' (expected classical or hhl)");
  const unsigned default_q = scheme == Scheme::kBE1 ? 12u : 7u;
  const int q_pe = a.q_pe >= 0 ? a.q_pe : pick<int>(kv, "q_pe", static_cast<int>(default_q));
  const double t0 = a.t0 >= 0 ? a.t0 : pick<double>(kv, "t0", 0.0);
  if (q_pe < 1) throw ConfigError("q_pe must be at least 1");

  RunManifest manifest("solve", a.common.config, a.common.seed, a.common.out);
  json& params = manifest.parameters();
  params["flow"] = config_json(c);
  params["scheme"] = to_string(scheme);
  params["method"] = method;
  params["q_pe"] = q_pe;
  params["t0_requested"] = t0;
  json metrics;
  Eigen::VectorXd final_profile, reference;
  double final_time = 0.0;

  if (scheme == Scheme::kBE1) {
    const Be1Iteration classical = iterate_be1_classical(c);
    std::vector<Eigen::VectorXd> profiles = classical.profiles;
    if (method == "hhl") {
      IterativeOptions opt;
      opt.qpe = QPEConfig{static_cast<unsigned>(q_pe), t0, 0.0};
      const IterativeRun run = iterative_be_driver(c, opt);
      profiles = run.profiles;
      metrics["iterations"] = run.iterations;
      metrics["residual"] = run.residual;
      metrics["t0"] = run.config_used.t0;
      metrics["q_pe"] = run.config_used.q_pe;
      metrics["success_probability"] = run.success_probability.back();
      metrics["fidelity_last_step"] = run.fidelity.back();
      metrics["hhl"] = json::parse(hhl_result_json(run.last));
    } else {
      metrics["iterations"] = classical.iterations;
      metrics["residual"] = classical.residual;
    }
    final_profile = profiles.back();
    reference = analytical_steady_profile(c);
    final_time = static_cast<double>(profiles.size() - 1) * c.dt;
    metrics["classical_reference"] = "be1 iteration to steady state";
    metrics["epsilon_rms_classical"] = error_metrics(final_profile, classical.profiles.back()).rms;
    write_profiles(manifest.output("profiles.csv"), c, profiles, 0);
  } else {
    if (method == "hhl") {
      OneShotOptions opt;
      opt.qpe = QPEConfig{static_cast<unsigned>(q_pe), t0, 0.0};
      const OneShotRun run = one_shot_driver(c, scheme, opt);
      final_profile = run.final_profile;
      const Eigen::VectorXd classical_final = block(run.classical, run.system.block_size, c.m());
      metrics["epsilon_rms_classical"] = error_metrics(final_profile, classical_final).rms;
      metrics["epsilon_qlsa"] = qlsa_error(run.result.solution, run.classical);
      metrics["fidelity_space_time"] = run.fidelity;
      metrics["t0"] = run.result.config_used.t0;
      metrics["q_pe"] = run.result.config_used.q_pe;
      metrics["success_probability"] = run.result.success_probability;
      metrics["kappa"] = run.system.kappa();
      metrics["hhl"] = json::parse(hhl_result_json(run.result));
    } else {
      const LinearSystem sys = build_one_shot_system(c, scheme);
      final_profile = block(solve_block_forward(sys), sys.block_size, c.m());
      metrics["epsilon_rms_classical"] = 0.0;
      metrics["kappa"] = sys.kappa();
    }
    final_time = c.m() * c.dt;
    reference = analytical_profile(c, final_time);
    metrics["classical_reference"] = "block forward substitution";
    write_profiles(manifest.output("profiles.csv"), c, {final_profile}, c.m());
  }
  const ErrorMetrics em = error_metrics(final_profile, reference);
  metrics["final_time"] = final_time;
  metrics["epsilon_rms_analytical"] = em.rms;
  metrics["fidelity_analytical"] = em.fidelity;
  open_out(manifest.output("metrics.json")) << metrics.dump(2) << "\n";
  manifest.write();
  std::cout << "solve: eps_rms(analytical) = " << fmt(em.rms) << ", outputs in " << a.common.out << "\n";
}

// ---- scan-tq ----

struct ScanArgs {
  Common common;
  std::string scheme;
  double kappa = 0.0;
  int t0_points = 32;
  double t0_min = -1.0, t0_max = -1.0;
  unsigned q_min = 3, q_max = 13;
  std::string evaluator = "circuit";
};

HermitianSystem scan_system(const FlowConfig& c, const std::string& scheme_name, double kappa, json& params) {
  if (kappa > 0.0) {
    const LinearSystem sys = matched_kappa_system(kappa, c);
    params["system"] = {{"kind", "matched-kappa be1 operator"}, {"kappa", kappa}, {"dim", sys.dim()}};
    return hermitian_dilation(sys);
  }
  const Scheme scheme = scheme_from_string(scheme_name);
  if (scheme == Scheme::kBE1) {
    params["system"] = {{"kind", "be1 step from u_in"}};
    return hermitian_dilation(build_be1_system(c, Eigen::VectorXd::Constant(c.interior(), c.u_in)));
  }
  params["system"] = {{"kind", "one-shot"}, {"scheme", to_string(scheme)}};
  return hermitian_dilation(build_one_shot_system(c, scheme));
}

void cmd_scan_tq(const ScanArgs& a) {
  prepare(a.common);
  const KeyValues kv = load_optional(a.common.config);
  const FlowConfig c = flow_config_from(kv);
  if (a.q_min < 1 || a.q_max < a.q_min || a.q_max > 20) throw ConfigError("q_pe range must satisfy 1 <= q-min <= q-max <= 20");
  if (a.t0_points < 1) throw ConfigError("--t0-points must be positive");
  if (a.evaluator != "circuit" && a.evaluator != "model") throw ConfigError("--evaluator must be circuit or model");
  RunManifest manifest("scan-tq", a.common.config, a.common.seed, a.common.out);
  json& params = manifest.parameters();
  params["flow"] = config_json(c);
  const std::string scheme = a.scheme.empty() ? pick<std::string>(kv, "scheme", "be2") : a.scheme;
  const HermitianSystem hsys = scan_system(c, scheme, a.kappa, params);
  std::vector<double> t0s;
  if (a.t0_min > 0.0 && a.t0_max >= a.t0_min) {
    for (int i = 0; i < a.t0_points; ++i) {
      t0s.push_back(a.t0_points == 1 ? a.t0_min : a.t0_min + (a.t0_max - a.t0_min) * i / (a.t0_points - 1));
    }
  } else if (a.t0_min > 0.0 || a.t0_max > 0.0) {
    throw ConfigError("--t0-min and --t0-max must be given together with 0 < min <= max");
  } else {
    t0s = default_t0_range(hsys, a.t0_points);
  }
  std::vector<unsigned> qs;
  for (unsigned q = a.q_min; q <= a.q_max; ++q) qs.push_back(q);
  params["t0s"] = t0s;
  params["q_pe"] = qs;
  params["evaluator"] = a.evaluator;
  const TQScanResult scan =
      tq_scan(hsys, t0s, qs, a.evaluator == "model" ? ScanEvaluator::kModel : ScanEvaluator::kCircuit);
  {
    auto f = open_out(manifest.output("scan.csv"));
    write_scan_csv(f, scan);
  }
  json summary = json::parse(scan_summary_json(scan));
  summary["locus_spread"] = scan.locus_spread();
  summary["locus_spread_fraction"] = scan.range() > 0.0 ? scan.locus_spread() / scan.range() : 0.0;
  open_out(manifest.output("tstar.json")) << summary.dump(2) << "\n";
  manifest.write();
  std::cout << "scan-tq: T0* = " << fmt(scan.t0_star) << ", kappa = " << fmt(scan.kappa) << "\n";
}

// ---- fits ----

struct FitsArgs {
  Common common;
  std::string scan;
  std::vector<std::string> summaries;
};

void cmd_fits(const FitsArgs& a) {
  prepare(a.common);
  if (a.scan.empty() && a.summaries.empty()) throw ConfigError("fits needs --scan and/or --summary inputs");
  RunManifest manifest("fits", a.common.config, a.common.seed, a.common.out);
  json& params = manifest.parameters();
  json out = json::object();
  if (!a.scan.empty()) {
    std::ifstream in(a.scan);
    if (!in) throw ConfigError("cannot open scan file '" + a.scan + "'");
    std::string line;
    std::getline(in, line);
    if (line != "t0,q_pe,epsilon") throw ConfigError("scan file must start with the header t0,q_pe,epsilon");
    std::map<unsigned, double> best;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      double t0 = 0.0, eps = 0.0;
      unsigned q = 0;
      if (std::sscanf(line.c_str(), "%lf,%u,%lf", &t0, &q, &eps) != 3) throw ConfigError("bad scan row '" + line + "'");
      auto it = best.find(q);
      if (it == best.end() || eps < it->second) best[q] = eps;
    }
    std::vector<unsigned> qs;
    std::vector<double> eps;
    for (const auto& [q, e] : best) {
      qs.push_back(q);
      eps.push_back(e);
    }
    params["scan"] = a.scan;
    try {
      out["error_power_law"] = json::parse(fit_json(fit_error_power_law(qs, eps)));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("power-law fit: ") + e.what());
    }
    out["error_power_law"]["q_pe"] = qs;
    out["error_power_law"]["eps_min"] = eps;
  }
  if (!a.summaries.empty()) {
    std::vector<double> kappa, t0;
    for (const auto& path : a.summaries) {
      std::ifstream in(path);
      if (!in) throw ConfigError("cannot open summary '" + path + "'");
      const json j = json::parse(in, nullptr, false);
      if (j.is_discarded() || !j.contains("kappa") || !j.contains("t0_star")) {
        throw ConfigError("summary '" + path + "' lacks kappa/t0_star");
      }
      kappa.push_back(j["kappa"].get<double>());
      t0.push_back(j["t0_star"].get<double>());
    }
    params["summaries"] = a.summaries;
    try {
      out["t0_kappa"] = json::parse(fit_json(fit_t0_kappa(kappa, t0)));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("T0*-kappa fit: ") + e.what());
    }
    out["t0_kappa"]["kappa"] = kappa;
    out["t0_kappa"]["t0_star"] = t0;
  }
  open_out(manifest.output("fits.json")) << out.dump(2) << "\n";
  manifest.write();
  std::cout << "fits: written to " << a.common.out << "\n";
}

// ---- dissipation ----

struct DissipationArgs {
  Common common;
  std::vector<double> reynolds{10.0, 100.0, 1000.0};
  unsigned r = 8;
  int q_pe = -1;
  std::string derivative = "lcu-fd";
};

void cmd_dissipation(const DissipationArgs& a) {
  prepare(a.common);
  const KeyValues kv = load_optional(a.common.config);
  const FlowConfig c = flow_config_from(kv);
  SweepOptions opt;
  opt.qpp.r = a.r;
  if (a.derivative == "spectral") {
    opt.qpp.method = DerivativeMethod::kSpectral;
  } else if (a.derivative != "lcu-fd") {
    throw ConfigError("--derivative must be lcu-fd or spectral");
  }
  opt.q_pe = static_cast<unsigned>(a.q_pe >= 1 ? a.q_pe : pick<int>(kv, "q_pe", 8));
  if (a.reynolds.empty()) throw ConfigError("--re needs at least one value");
  RunManifest manifest("dissipation", a.common.config, a.common.seed, a.common.out);
  json& params = manifest.parameters();
  params["flow"] = config_json(c);
  params["reynolds"] = a.reynolds;
  params["r"] = a.r;
  params["q_pe"] = opt.q_pe;
  params["diffusion_number"] = opt.diffusion_number;
  params["derivative"] = a.derivative;
  params["mode"] = "staged";
  const auto rows = dissipation_sweep(c, a.reynolds, opt);
  {
    auto f = open_out(manifest.output("sweep.csv"));
    write_sweep_csv(f, rows);
  }
  manifest.write();
  for (const auto& row : rows) {
    std::cout << "Re = " << fmt(row.reynolds) << ": eps_quantum = " << fmt(row.epsilon_quantum)
              << ", eps_classical = " << fmt(row.epsilon_classical) << "\n";
  }
}

// ---- qsp-demo ----

struct QspArgs {
  Common common;
  std::string vector;
  std::string method = "both";
  int qubits = 0;
};

void cmd_qsp_demo(const QspArgs& a) {
  prepare(a.common);
  if (a.method != "qsp1" && a.method != "qsp2" && a.method != "both") throw ConfigError("--method must be qsp1, qsp2 or both");
  std::ifstream in(a.vector);
  if (!in) throw ConfigError("cannot open vector file '" + a.vector + "'");
  std::vector<SparseEntry> entries;
  try {
    entries = read_sparse_csv(in);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("vector file: ") + e.what());
  }
  if (entries.empty()) throw ConfigError("vector file has no entries");
  std::size_t max_index = 0;
  for (const auto& e : entries) max_index = std::max<std::size_t>(max_index, e.index);
  unsigned n = 1;
  while ((std::size_t{1} << n) <= max_index) ++n;
  if (a.qubits > 0) {
    if ((std::size_t{1} << a.qubits) <= max_index) throw ConfigError("--qubits too small for the largest index");
    n = static_cast<unsigned>(a.qubits);
  }
  RunManifest manifest("qsp-demo", a.vector, a.common.seed, a.common.out);
  json& params = manifest.parameters();
  params["vector"] = a.vector;
  params["qubits"] = n;
  params["method"] = a.method;
  json report = {{"qubits", n}, {"nonzeros", entries.size()}};
  const std::vector<double> dense = sparse_to_dense(entries, n);
  CircuitProgram p1, p2;
  if (a.method != "qsp2") {
    p1 = prepare_real_state(dense, n);
    open_out(manifest.output("circuit_qsp1.txt")) << circuit_to_text(p1);
    report["cnot_qsp1"] = circuit_stats(p1).cnot;
    report["gates_qsp1"] = p1.size();
  }
  if (a.method != "qsp1") {
    for (const auto& e : entries) {
      if (e.value < 0.0) throw ConfigError("qsp2 needs nonnegative values");
    }
    p2 = qsp2_synthesize(entries, n);
    open_out(manifest.output("circuit_qsp2.txt")) << circuit_to_text(p2);
    report["cnot_qsp2"] = circuit_stats(p2).cnot;
    report["gates_qsp2"] = p2.size();
    report["paths"] = build_decision_diagram(entries, n).paths();
  }
  if (a.method == "both") report["cnot_reduction_percent"] = cnot_report(p1, p2);
  open_out(manifest.output("cnot_report.json")) << report.dump(2) << "\n";
  manifest.write();
  std::cout << report.dump() << "\n";
}

void add_common(CLI::App* sub, Common& c, bool needs_config) {
  auto* opt = sub->add_option("--config", c.config, "key = value configuration file");
  if (needs_config) opt->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "output directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "seed recorded in the manifest")->capture_default_str();
  sub->add_option("--threads", c.threads, "worker threads (0 = default)")->capture_default_str();
}

int run(int argc, char** argv) {
  CLI::App app{"qflow: quantum linear-system channel-flow experiments"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "solve the channel problem classically or with HHL");
  add_common(s, solve.common, true);
  s->add_option("--scheme", solve.scheme, "be1, be2 or fe (config key 'scheme', default be1)");
  s->add_option("--method", solve.method, "classical or hhl (config key 'method', default hhl)");
  s->add_option("--q-pe", solve.q_pe, "clock qubits");
  s->add_option("--t0", solve.t0, "evolution time; 0 selects it from the QPE model");

  ScanArgs scan;
  auto* sc = app.add_subcommand("scan-tq", "epsilon over a (t0, q_pe) grid");
  add_common(sc, scan.common, true);
  sc->add_option("--scheme", scan.scheme, "system from the config: be1, be2 or fe");
  sc->add_option("--kappa", scan.kappa, "use the matched-kappa BE1 operator instead");
  sc->add_option("--t0-points", scan.t0_points)->capture_default_str();
  sc->add_option("--t0-min", scan.t0_min);
  sc->add_option("--t0-max", scan.t0_max);
  sc->add_option("--q-min", scan.q_min)->capture_default_str();
  sc->add_option("--q-max", scan.q_max)->capture_default_str();
  sc->add_option("--evaluator", scan.evaluator, "circuit or model")->capture_default_str();

  FitsArgs fits;
  auto* f = app.add_subcommand("fits", "power-law and T0*-kappa fits of scan outputs");
  add_common(f, fits.common, false);
  f->add_option("--scan", fits.scan, "scan.csv from scan-tq")->check(CLI::ExistingFile);
  f->add_option("--summary", fits.summaries, "tstar.json files from scan-tq")->check(CLI::ExistingFile);

  DissipationArgs diss;
  auto* d = app.add_subcommand("dissipation", "viscous dissipation sweep over Re");
  add_common(d, diss.common, false);
  d->add_option("--re", diss.reynolds, "Reynolds numbers")->delimiter(',')->capture_default_str();
  d->add_option("--r", diss.r, "readout bits")->capture_default_str();
  d->add_option("--q-pe", diss.q_pe, "clock qubits of the BE1 solves (default 8)");
  d->add_option("--derivative", diss.derivative, "lcu-fd or spectral")->capture_default_str();

  QspArgs qsp;
  auto* q = app.add_subcommand("qsp-demo", "QSP-1 and QSP-2 circuits for a sparse vector");
  add_common(q, qsp.common, false);
  q->add_option("--vector", qsp.vector, "index,value CSV")->required()->check(CLI::ExistingFile);
  q->add_option("--method", qsp.method, "qsp1, qsp2 or both")->capture_default_str();
  q->add_option("--qubits", qsp.qubits, "register width (default: smallest that fits)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }
  try {
    if (*s) cmd_solve(solve);
    if (*sc) cmd_scan_tq(scan);
    if (*f) cmd_fits(fits);
    if (*d) cmd_dissipation(diss);
    if (*q) cmd_qsp_demo(qsp);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 3;
  } catch (const PostSelectionError& e) {
    std::cerr << "post-selection failure: " << e.what() << "\n";
    return 2;
  } catch (const StabilityError& e) {
    std::cerr << "stability failure: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace qflow::cli

int main(int argc, char** argv) { return qflow::cli::run(argc, argv); }
