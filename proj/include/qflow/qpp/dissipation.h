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

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qflow/cfd/flow_config.h"
#include "qflow/qpp/derivative.h"

namespace qflow {

struct DissipationOptions {
  unsigned r = 8;
  DerivativeMethod method = DerivativeMethod::kLcuFd;
};

/// epsilon = nu <(du/dy)^2> over the interior points.
///
/// The pipeline is staged: the normalized profile is loaded by a QSP
/// circuit, the derivative stage returns its output state and norm, and the
/// mean-square circuit is composed from a QSP oracle of that state.
struct DissipationResult {
  double epsilon = 0.0;
  /// The same interior mean computed from classical central differences.
  double epsilon_classical = 0.0;
  /// Amplitude read from the mean-square circuit, times the address count.
  double mean_square = 0.0;
  double derivative_norm = 0.0;
  double derivative_success = 0.0;
  std::size_t clamped = 0;
  bool staged = true;
  bool zero_derivative = false;
  unsigned n_qubits = 0;
  std::size_t gates = 0;
  /// Stage outputs kept for inspection.
  AmplitudeState profile_state;
  AmplitudeState derivative_state;
};

DissipationResult dissipation(const FlowConfig& config, const Eigen::VectorXd& interior,
                              const DissipationOptions& options = {});

/// nu times the interior mean of squared central differences.
double dissipation_classical_interior(const FlowConfig& config, const Eigen::VectorXd& interior);
/// nu times the trapezoidal average over [0, D] of the full-grid gradient
/// squared, with one-sided second-order stencils at the walls.
double dissipation_classical(const FlowConfig& config, const Eigen::VectorXd& interior);
/// Steady profile u = G y (D - y) + u_top y / D with G = -Re dp/dx / 2:
/// nu (G^2 D^2 / 3 + u_top^2 / D^2).
double dissipation_analytic(const FlowConfig& config);

struct SweepOptions {
  DissipationOptions qpp;
  unsigned q_pe = 8;
  /// nu dt / h^2 of the BE1 steady-state iteration.
  double diffusion_number = 10.0;
  int max_iter = 500;
};

struct SweepRow {
  double reynolds = 0.0;
  double epsilon_quantum = 0.0;
  double epsilon_classical = 0.0;
  double epsilon_analytic = 0.0;
  int iterations = 0;
};

/// Quantum BE1 steady state at each Re followed by the quantum pipeline;
/// the Re points run concurrently.
std::vector<SweepRow> dissipation_sweep(const FlowConfig& base, const std::vector<double>& reynolds,
                                        const SweepOptions& options = {});
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace qflow
