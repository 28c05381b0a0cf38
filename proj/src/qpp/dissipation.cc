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

#include "qflow/qpp/dissipation.h"

#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>

#include "qflow/core/errors.h"
#include "qflow/core/parallel.h"
#include "qflow/core/simulator.h"
#include "qflow/qlsa/drivers.h"
#include "qflow/qpp/qadc.h"
#include "qflow/qsp/qsp1.h"

namespace qflow {

namespace {

std::vector<double> as_vector(const Eigen::VectorXd& v, std::size_t size) {
  std::vector<double> out(size, 0.0);
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v[i];
  return out;
}

}  // namespace

DissipationResult dissipation(const FlowConfig& config, const Eigen::VectorXd& interior,
                              const DissipationOptions& options) {
  config.validate();
  if (interior.size() != config.interior()) throw ConfigError("profile length must equal the interior size");
  const int points = config.interior();
  DerivativeOp op;
  if (options.method == DerivativeMethod::kLcuFd) {
    if (config.u_top() != 0.0) throw ConfigError("quantum finite differences need zero wall velocities");
    op = lcu_fd_derivative(points, config.h());
  } else {
    if ((points & (points - 1)) != 0) throw ConfigError("spectral derivatives need a power-of-two point count");
    // The interior points are read as one period of length points * h.
    op = spectral_derivative(static_cast<unsigned>(std::lround(std::log2(points))), points * config.h());
  }
  const std::size_t addresses = std::size_t{1} << op.qubits;

  DissipationResult out;
  out.epsilon_classical = dissipation_classical_interior(config, interior);
  const double norm = interior.norm();
  if (!(norm > 0.0)) throw ConfigError("profile is identically zero");

  // Stage 1: load the normalized profile.
  AmplitudeState u = run_program(prepare_real_state(as_vector(interior / norm, addresses), op.qubits));
  out.profile_state = u;
  // Stage 2: derivative state and norm.
  const DerivativeResult d = quantum_derivative(u, op);
  out.derivative_success = d.success_probability;
  if (d.zero) {
    out.zero_derivative = true;
    return out;
  }
  out.derivative_norm = d.scale * norm;
  out.derivative_state = d.state;
  std::vector<double> dv(addresses);
  for (std::size_t i = 0; i < addresses; ++i) dv[i] = d.state[i].real();
  // Stage 3: mean of the squared normalized amplitudes.
  const MeanSquareResult ms = run_mean_square(prepare_real_state(dv, op.qubits), options.r);
  out.mean_square = ms.amplitude * static_cast<double>(addresses);
  out.clamped = ms.clamped;
  out.n_qubits = ms.n_qubits;
  out.gates = ms.gates;
  out.epsilon = config.nu() * out.derivative_norm * out.derivative_norm * out.mean_square / points;
  return out;
}

double dissipation_classical_interior(const FlowConfig& config, const Eigen::VectorXd& interior) {
  const Eigen::VectorXd d = central_difference(interior, config.h(), 0.0, config.u_top());
  return config.nu() * d.squaredNorm() / static_cast<double>(d.size());
}

double dissipation_classical(const FlowConfig& config, const Eigen::VectorXd& interior) {
  const auto full = with_walls(config, interior);
  const Eigen::VectorXd g = full_grid_gradient(Eigen::Map<const Eigen::VectorXd>(full.data(), static_cast<Eigen::Index>(full.size())), config.h());
  const Eigen::VectorXd sq = g.cwiseAbs2();
  const double integral = config.h() * (sq.sum() - 0.5 * (sq[0] + sq[sq.size() - 1]));
  return config.nu() * integral / config.domain_width;
}

double dissipation_analytic(const FlowConfig& config) {
  const double g = -config.reynolds * config.dpdx / 2.0;
  const double d = config.domain_width;
  const double ut = config.u_top();
  return config.nu() * (g * g * d * d / 3.0 + ut * ut / (d * d));
}

std::vector<SweepRow> dissipation_sweep(const FlowConfig& base, const std::vector<double>& reynolds,
                                        const SweepOptions& options) {
  std::vector<SweepRow> rows(reynolds.size());
  std::vector<std::exception_ptr> errors(reynolds.size());
  parallel_for(reynolds.size(), [&](std::size_t i) {
    try {
      FlowConfig c = base;
      c.reynolds = reynolds[i];
      c.dt = options.diffusion_number * c.h() * c.h() / c.nu();
      c.steps = 1;
      IterativeOptions it;
      it.qpe = QPEConfig{options.q_pe, 0.0, 0.0};
      it.max_iter = options.max_iter;
      const IterativeRun run = iterative_be_driver(c, it);
      const Eigen::VectorXd classical = iterate_be1_classical(c, 1e-12, 100000).profiles.back();
      SweepRow& row = rows[i];
      row.reynolds = c.reynolds;
      row.epsilon_quantum = dissipation(c, run.profiles.back(), options.qpp).epsilon;
      row.epsilon_classical = dissipation_classical_interior(c, classical);
      row.epsilon_analytic = dissipation_analytic(c);
      row.iterations = run.iterations;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "reynolds,epsilon_quantum,epsilon_classical,epsilon_analytic,iterations\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d\n", r.reynolds, r.epsilon_quantum,
                  r.epsilon_classical, r.epsilon_analytic, r.iterations);
    out << buf;
  }
}

}  // namespace qflow
