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

#include "qflow/cfd/systems.h"

namespace qflow {

/// sigma_max / sigma_min from a dense SVD; throws std::invalid_argument for
/// empty, non-square or singular input.
double condition_number(const Eigen::MatrixXd& a);
double condition_number(const LinearSystem& system);

/// Trace-only eigenvalue bounds of a symmetric matrix (Wolkowicz-Styan):
///   beta1 - beta2 sqrt(N-1) <= lambda_min <= beta1 - beta2 / sqrt(N-1)
///   beta1 + beta2 / sqrt(N-1) <= lambda_max <= beta1 + beta2 sqrt(N-1)
struct EigBounds {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double lambda_min_lo = 0.0;
  double lambda_min_hi = 0.0;
  double lambda_max_lo = 0.0;
  double lambda_max_hi = 0.0;

  /// Largest possible |lambda|.
  double abs_max_bound() const;
};

/// Throws std::invalid_argument for N < 2 or a non-symmetric matrix.
EigBounds eig_bounds(const Eigen::MatrixXd& a);

/// BE1 system (I - nu dt L) u = u_in + f dt of `base` with dt chosen by
/// bisection so that its condition number equals `kappa` (relative 1e-10).
/// kappa(dt) rises monotonically from 1 toward the Laplacian's own condition
/// number; targets outside that range throw std::invalid_argument.
LinearSystem matched_kappa_system(double kappa, const FlowConfig& base = {});

}  // namespace qflow
