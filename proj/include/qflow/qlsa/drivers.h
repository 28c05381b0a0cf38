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
#include <vector>

#include "qflow/cfd/flow_config.h"
#include "qflow/cfd/systems.h"
#include "qflow/qlsa/hhl.h"

namespace qflow {

struct IterativeOptions {
  /// t0 <= 0 picks t0 from the QPE model: the value whose model fixed point
  /// of the quantum BE1 map is closest to the classical one.
  QPEConfig qpe{12, 0.0, 0.0};
  double tol = 1e-6;
  /// 0 means 10 * m.
  int max_iter = 0;
  /// Throw ConvergenceError when the loop stops without meeting tol.
  bool require_convergence = true;
};

struct IterativeRun {
  /// u^0 = u_in, then one profile per quantum step.
  std::vector<Eigen::VectorXd> profiles;
  /// |<u_q, u_c>|^2 per step against the dense solve of the same system.
  std::vector<double> fidelity;
  std::vector<double> success_probability;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  QPEConfig config_used;
  HHLResult last;
};

/// Model fixed point u* = (I - G)^-1 G f dt of the quantum BE1 map u -> G (u + f dt).
Eigen::VectorXd be1_model_fixed_point(const FlowConfig& config, const HermitianSystem& hsys, const QPEConfig& qpe);

/// Repeats: prepare b = u + f dt, run HHL, read the rescaled solution as the
/// next u, until ||u^{j+1} - u^j||_inf <= tol.
IterativeRun iterative_be_driver(const FlowConfig& config, const IterativeOptions& options = {});

enum class StatePrep { kQsp1, kQsp2 };
enum class Rescale { kSuccessProbability, kInitialBlock };

struct OneShotOptions {
  /// t0 <= 0 selects the model-optimal t0 for the block system.
  QPEConfig qpe{7, 0.0, 0.0};
  StatePrep prep = StatePrep::kQsp2;
  /// kInitialBlock fits one scale so the first time level equals u_in.
  Rescale rescale = Rescale::kInitialBlock;
};

struct OneShotRun {
  LinearSystem system;
  Eigen::VectorXd space_time;
  Eigen::VectorXd final_profile;
  Eigen::VectorXd classical;
  /// |<x_q, x_c>|^2 over the whole space-time vector.
  double fidelity = 0.0;
  HHLResult result;
};

OneShotRun one_shot_driver(const FlowConfig& config, Scheme scheme, const OneShotOptions& options = {});

}  // namespace qflow
