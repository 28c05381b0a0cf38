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

#include "qflow/cfd/flow_config.h"

namespace qflow {

/// Exact solution of the channel problem started from the uniform profile
/// u_in. Steady part u_top*y/D - (Re/2)*dpdx*y*(D-y), plus the sine series of
/// the decaying transient. Summation stops once the remaining term envelope
/// drops below 1e-14, with at most 1e5 terms.
double analytical_poiseuille(const FlowConfig& config, double y, double t);
/// The t -> infinity limit.
double analytical_steady(const FlowConfig& config, double y);
/// Analytical values at the interior grid points.
Eigen::VectorXd analytical_profile(const FlowConfig& config, double t);
Eigen::VectorXd analytical_steady_profile(const FlowConfig& config);

struct ErrorMetrics {
  double rms = 0.0;
  double fidelity = 0.0;
};

/// rms is sqrt(mean((u_q - u_ref)^2)) on the vectors as given; fidelity is
/// |<u_q/|u_q|, u_ref/|u_ref|>|. Zero vectors throw std::invalid_argument.
ErrorMetrics error_metrics(const Eigen::VectorXd& u_q, const Eigen::VectorXd& u_ref);

}  // namespace qflow
