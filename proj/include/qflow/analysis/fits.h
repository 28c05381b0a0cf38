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

#include <string>
#include <vector>

namespace qflow {

enum class FitModel {
  /// y = c * x^p, fitted as a line in (ln x, ln y); params {p, c}.
  kPowerLaw,
  /// y = s * ln x + c; params {s, c}.
  kLogLinear,
  /// kappa = m (exp(-a m nu) + c), fitted in log space; params {a, c}.
  kStretchedExponential,
};

std::string to_string(FitModel model);

struct FitResult {
  FitModel model = FitModel::kPowerLaw;
  std::vector<double> params;
  /// Coefficient of determination in the fitted (transformed) space, clamped to [0, 1].
  double r_squared = 0.0;
};

/// Errors: fewer than 3 points, mismatched lengths, nonpositive values where
/// a log is taken, or constant abscissae (std::invalid_argument).
FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y);
FitResult fit_log_linear(const std::vector<double>& x, const std::vector<double>& y);

/// epsilon_min against q_pe.
FitResult fit_error_power_law(const std::vector<unsigned>& q_pe, const std::vector<double>& eps_min);
/// (kappa, T0*) pairs.
FitResult fit_t0_kappa(const std::vector<double>& kappa, const std::vector<double>& t0_star);

struct KappaPoint {
  double m = 0.0;
  double nu = 0.0;
  double kappa = 0.0;
};
/// Levenberg-Marquardt from the initial guess (a, c) = (0.02, 2).
FitResult fit_kappa_model(const std::vector<KappaPoint>& points);
double kappa_model(double m, double nu, double a, double c);

/// Evaluates a log-linear fit at kappa and clamps the result to `floor`.
/// Throws std::invalid_argument for kappa <= 0 or a different model.
double predict_t0(double kappa, const FitResult& fit, double floor = 0.05);

/// {"model", "params", "r_squared"}.
std::string fit_json(const FitResult& fit);

}  // namespace qflow
