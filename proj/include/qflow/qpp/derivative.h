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

#include "qflow/core/state.h"
#include "qflow/qlsa/lcu.h"

namespace qflow {

enum class DerivativeMethod {
  /// IQFT, diagonal wavenumber multiplication, QFT; periodic data only.
  kSpectral,
  /// Central-difference matrix applied by LCU; homogeneous Dirichlet data.
  kLcuFd,
};

struct DerivativeOp {
  DerivativeMethod method = DerivativeMethod::kLcuFd;
  unsigned qubits = 0;
  /// Number of data points (2^qubits for spectral).
  int points = 0;
  /// Spectral: Lambda_kk = 2 pi i k / L with the Nyquist entry zero.
  Eigen::VectorXcd lambda_diag;
  /// Unitary terms: diagonal phases for spectral, shifts for lcu-fd.
  LcuDecomposition decomposition;
};

/// Periodic grid of 2^qubits points over a period of length `length`.
DerivativeOp spectral_derivative(unsigned qubits, double length = 1.0);
/// Interior points with spacing h and zero wall values; the register holds
/// 2 * 2^ceil(log2 points) amplitudes during the LCU step.
DerivativeOp lcu_fd_derivative(int points, double h);

struct DerivativeResult {
  /// Normalized u' on ceil(log2 points) qubits; empty when `zero` is set.
  AmplitudeState state;
  /// Product of all post-selection probabilities.
  double success_probability = 0.0;
  /// u' = scale * state for a unit-norm input.
  double scale = 0.0;
  /// The flagged branch vanished: the derivative is zero.
  bool zero = false;

  Eigen::VectorXd values(double input_norm = 1.0) const;
};

/// Input amplitudes proportional to grid values (any norm).
DerivativeResult quantum_derivative(const AmplitudeState& u, const DerivativeOp& op);

/// Classical references: central differences with zero walls on interior
/// data, and the full-grid gradient with one-sided second-order stencils at
/// the walls.
Eigen::VectorXd central_difference(const Eigen::VectorXd& interior, double h, double wall_lo = 0.0,
                                   double wall_hi = 0.0);
Eigen::VectorXd full_grid_gradient(const Eigen::VectorXd& grid, double h);
/// Periodic spectral derivative via a dense DFT.
Eigen::VectorXd spectral_derivative_classical(const Eigen::VectorXd& u, double length = 1.0);

}  // namespace qflow
