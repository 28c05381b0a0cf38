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
#include <functional>

#include "qflow/qlsa/hhl.h"

namespace qflow {

/// Probability that a q-bit phase estimation of phase phi reads k, as a
/// function of delta = phi - k/2^q: sin^2(pi M delta) / (M^2 sin^2(pi delta)).
double fejer_weight(double delta, unsigned q_pe);

/// Effective inverse eigenvalue the circuit applies to each eigenvector:
/// (t0 / (2 pi C)) * sum_{k != 0} F(phi_j - k/M) * clamp(C / decode(k)).
/// Exact for the circuit built by HHLCircuit, so it doubles as its oracle.
Eigen::VectorXd qpe_inverse_gains(const Eigen::VectorXd& eigenvalues, const QPEConfig& config);

/// V diag(gains) V^T, the dilated operator the post-selected circuit applies.
Eigen::MatrixXd hhl_model_operator(const HermitianSystem& hsys, const QPEConfig& config);
/// Its N x N block mapping b (first block) to x (second block); approximates A^-1.
Eigen::MatrixXd hhl_model_inverse(const HermitianSystem& hsys, const QPEConfig& config);
/// Unit-norm model solution for the stored right-hand side.
Eigen::VectorXd hhl_model_solution(const HermitianSystem& hsys, const QPEConfig& config);

struct T0Optimum {
  double t0 = 0.0;
  double objective = 0.0;
};

/// Grid scan of t0 over (0, t_max] followed by golden-section refinement
/// around the best sample. Non-finite objective values are skipped.
T0Optimum optimize_t0(double t_max, const std::function<double(double)>& objective, int samples = 1024);

/// Largest t0 for which the dilated spectrum fits in (-1/2, 1/2) phases.
double max_t0(const HermitianSystem& hsys);

/// t0 minimizing the model error of hhl_model_solution against the dense solve.
T0Optimum optimize_t0_for_solution(const HermitianSystem& hsys, unsigned q_pe, double c_rot = 0.0);

}  // namespace qflow
