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

#include "qflow/qlsa/hhl.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <stdexcept>

#include "qflow/core/errors.h"
#include "qflow/core/qft.h"
#include "qflow/core/simulator.h"
#include "qflow/qsp/qsp1.h"

namespace qflow {

namespace {

unsigned ceil_log2(int n) {
  unsigned s = 0;
  while ((1 << s) < n) ++s;
  return s;
}

Eigen::MatrixXcd spectral_power(const Eigen::VectorXd& lambda, const Eigen::MatrixXd& v, double t) {
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) phases[i] = std::polar(1.0, lambda[i] * t);
  const Eigen::MatrixXcd vc = v.cast<Complex>();
  return vc * phases.asDiagonal() * vc.adjoint();
}

}  // namespace

unsigned HermitianSystem::system_qubits() const {
  return ceil_log2(static_cast<int>(dilated.rows()));
}

double HermitianSystem::max_abs_eigenvalue() const { return eigenvalues.cwiseAbs().maxCoeff(); }

Eigen::VectorXd HermitianSystem::classical_solution() const {
  return original.fullPivLu().solve(rhs);
}

Eigen::VectorXd HermitianSystem::solution_block(const Eigen::VectorXd& dilated_vector) const {
  return dilated_vector.segment(padded_dim, dim());
}

HermitianSystem hermitian_dilation(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.rows() != a.cols() || a.rows() == 0) throw std::invalid_argument("matrix must be square");
  if (b.size() != a.rows()) throw std::invalid_argument("rhs length must match the matrix");
  HermitianSystem h;
  h.original = a;
  h.rhs = b;
  const int n = static_cast<int>(a.rows());
  const int np = 1 << ceil_log2(n);
  h.padded_dim = np;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const double smax = svd.singularValues()[0];
  const double smin = svd.singularValues()[n - 1];
  if (!(smin > 1e-13 * std::max(smax, 1.0))) throw std::invalid_argument("singular matrix");
  Eigen::MatrixXd ap = Eigen::MatrixXd::Zero(np, np);
  ap.topLeftCorner(n, n) = a;
  for (int i = n; i < np; ++i) ap(i, i) = smax;
  h.dilated = Eigen::MatrixXd::Zero(2 * np, 2 * np);
  h.dilated.topRightCorner(np, np) = ap;
  h.dilated.bottomLeftCorner(np, np) = ap.transpose();
  h.dilated_rhs = Eigen::VectorXd::Zero(2 * np);
  h.dilated_rhs.head(n) = b;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dilated);
  h.eigenvalues = es.eigenvalues();
  h.eigenvectors = es.eigenvectors();
  return h;
}

HermitianSystem hermitian_dilation(const LinearSystem& system) {
  return hermitian_dilation(system.dense(), system.rhs);
}

Eigen::MatrixXcd hamiltonian_unitary(const HermitianSystem& hsys, double t0) {
  return spectral_power(hsys.eigenvalues, hsys.eigenvectors, t0);
}

Eigen::MatrixXcd hamiltonian_unitary(const Eigen::MatrixXd& h, double t0) {
  if (h.rows() != h.cols() || (h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1 + h.norm())) {
    throw std::invalid_argument("Hamiltonian must be real symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  return spectral_power(es.eigenvalues(), es.eigenvectors(), t0);
}

double QPEConfig::inversion_constant() const {
  return c_rot > 0.0 ? c_rot : std::ldexp(1.0, -static_cast<int>(q_pe));
}

void QPEConfig::validate() const {
  if (q_pe < 1 || q_pe > 20) throw ConfigError("q_pe must be between 1 and 20");
  if (!(t0 > 0.0)) throw ConfigError("t0 must be positive");
  if (c_rot < 0.0 || c_rot > 0.5) throw ConfigError("c_rot must lie in [0, 0.5]");
}

double decode_phase(std::size_t k, unsigned q_pe) {
  const double m = std::ldexp(1.0, static_cast<int>(q_pe));
  const double phi = static_cast<double>(k) / m;
  return k < (std::size_t{1} << (q_pe - 1)) ? phi : phi - 1.0;
}

HHLCircuit::HHLCircuit(const HermitianSystem& hsys, const QPEConfig& config, unsigned prep_ancillas)
    : hsys_(hsys), config_(config), system_qubits_(hsys.system_qubits()), prep_ancillas_(prep_ancillas) {
  config_.validate();
  const unsigned q = config_.q_pe;
  const unsigned n = 1 + q + system_qubits_ + prep_ancillas_;
  if (n > 30) throw ConfigError("register too wide for simulation: " + std::to_string(n) + " qubits");
  std::vector<unsigned> sys(system_qubits_);
  for (unsigned i = 0; i < system_qubits_; ++i) sys[i] = system_first() + i;

  CircuitProgram qpe(n);
  for (unsigned j = 0; j < q; ++j) qpe.append(gate_h(clock_first() + j));
  for (unsigned j = 0; j < q; ++j) {
    const double power = std::ldexp(1.0, static_cast<int>(q - 1 - j));
    qpe.append(gate_unitary(sys, spectral_power(hsys.eigenvalues, hsys.eigenvectors, config_.t0 * power))
                   .controlled_by(clock_first() + j));
  }
  qpe.append_at(iqft_program(n, clock_first(), q), 0);

  core_ = CircuitProgram(n);
  core_.append_at(qpe, 0);
  const double c = config_.inversion_constant();
  const std::size_t m = std::size_t{1} << q;
  for (std::size_t k = 1; k < m; ++k) {
    const double ratio = std::clamp(c / decode_phase(k, q), -1.0, 1.0);
    GateOp rot = gate_ry(ancilla(), 2.0 * std::asin(ratio));
    std::vector<Control> pattern(q);
    for (unsigned j = 0; j < q; ++j) pattern[j] = {clock_first() + j, ((k >> (q - 1 - j)) & 1u) != 0};
    rot.controlled_by(pattern);
    core_.append(std::move(rot));
  }
  core_.append_at(qpe.inverse(), 0);
}

CircuitProgram HHLCircuit::program(const CircuitProgram& b_prep) const {
  CircuitProgram full(core_.n_qubits());
  full.append_at(b_prep, system_first());
  full.append_at(core_, 0);
  return full;
}

HHLResult HHLCircuit::run(const CircuitProgram& b_prep, double rhs_norm, bool with_stats) const {
  if (b_prep.n_qubits() != system_qubits_ + prep_ancillas_) {
    throw std::invalid_argument("b_prep width must equal system plus preparation ancilla qubits");
  }
  const unsigned n = core_.n_qubits();
  CircuitProgram full(n);
  full.append_at(b_prep, system_first());
  AmplitudeState state(n);
  apply_program(state, full);
  apply_program(state, core_);

  std::vector<Control> pattern{{ancilla(), true}};
  for (unsigned j = 0; j < config_.q_pe; ++j) pattern.push_back({clock_first() + j, false});
  for (unsigned j = 0; j < prep_ancillas_; ++j) pattern.push_back({system_first() + system_qubits_ + j, false});

  HHLResult r;
  r.success_probability = project_pattern(state, pattern);
  r.config_used = config_;
  r.n_qubits = n;
  if (with_stats) r.stats = circuit_stats(full.append_at(core_, 0));

  const std::size_t dim = std::size_t{1} << system_qubits_;
  const std::uint64_t base = std::uint64_t{1} << (n - 1);
  Eigen::VectorXcd sys(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) sys[static_cast<Eigen::Index>(i)] = state[base | (i << prep_ancillas_)];
  const Eigen::VectorXd x = hsys_.solution_block(sys.real());
  const double block_weight = hsys_.solution_block(sys.cwiseAbs2()).sum();
  r.block_leakage = std::max(0.0, 1.0 - block_weight);
  const double xn = x.norm();
  if (!(xn > 0.0)) throw PostSelectionError("post-selected state has no weight on the solution block");
  r.solution = x / xn;
  const double two_pi = 2.0 * std::numbers::pi;
  r.scaled_solution = x * (std::sqrt(r.success_probability) * rhs_norm * config_.t0 /
                           (two_pi * config_.inversion_constant()));
  r.raw_state = std::move(state);
  return r;
}

CircuitProgram prepare_dilated_rhs(const HermitianSystem& hsys) {
  const Eigen::VectorXd b = hsys.dilated_rhs.normalized();
  return prepare_real_state(std::vector<double>(b.data(), b.data() + b.size()), hsys.system_qubits());
}

HHLResult hhl_solve(const HermitianSystem& hsys, const QPEConfig& config, const CircuitProgram& b_prep) {
  const unsigned extra = b_prep.n_qubits() - hsys.system_qubits();
  if (b_prep.n_qubits() < hsys.system_qubits()) throw std::invalid_argument("b_prep is too narrow");
  const HHLCircuit circuit(hsys, config, extra);
  return circuit.run(b_prep, hsys.dilated_rhs.norm());
}

HHLResult hhl_solve(const HermitianSystem& hsys, const QPEConfig& config) {
  return hhl_solve(hsys, config, prepare_dilated_rhs(hsys));
}

double qlsa_error(const Eigen::VectorXd& quantum, const Eigen::VectorXd& classical) {
  if (quantum.size() != classical.size()) throw std::invalid_argument("vector lengths differ");
  return (quantum.normalized() - classical.normalized()).norm();
}

std::string hhl_result_json(const HHLResult& result) {
  nlohmann::json j;
  j["solution"] = std::vector<double>(result.solution.data(), result.solution.data() + result.solution.size());
  j["scaled_solution"] = std::vector<double>(result.scaled_solution.data(),
                                             result.scaled_solution.data() + result.scaled_solution.size());
  j["success_probability"] = result.success_probability;
  j["block_leakage"] = result.block_leakage;
  j["n_qubits"] = result.n_qubits;
  j["config"] = {{"q_pe", result.config_used.q_pe},
                 {"t0", result.config_used.t0},
                 {"c_rot", result.config_used.inversion_constant()}};
  nlohmann::json gates;
  for (const auto& [k, v] : result.stats.by_category) gates[k] = v;
  j["gates"] = {{"total", result.stats.total},
                {"cnot", result.stats.cnot},
                {"depth", result.stats.depth},
                {"by_category", gates}};
  return j.dump(2);
}

}  // namespace qflow
