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

#include "qflow/cfd/analytical.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qflow {

double analytical_steady(const FlowConfig& config, double y) {
  const double d = config.domain_width;
  const double eta = y / d;
  return config.u_top() * eta - 0.5 * config.reynolds * config.dpdx * d * d * eta * (1.0 - eta);
}

double analytical_poiseuille(const FlowConfig& config, double y, double t) {
  if (y < 0.0 || y > config.domain_width) throw std::invalid_argument("y outside the channel");
  if (t < 0.0) throw std::invalid_argument("negative time");
  const double pi = std::numbers::pi;
  const double d = config.domain_width;
  const double press = config.dpdx * config.reynolds * d * d;
  const double scale = 2.0 * (2.0 * std::abs(config.u_in) + 2.0 * std::abs(press) +
                              std::abs(config.u_top()));
  double sum = 0.0;
  for (int k = 1; k <= 100000; ++k) {
    const double kp = k * pi;
    const double decay = std::exp(-config.nu() * (kp / d) * (kp / d) * t);
    if (scale / kp * decay < 1e-14) break;
    const double odd = (k % 2 == 1) ? 2.0 : 0.0;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const double bk =
        2.0 * odd / kp * (config.u_in + press / (kp * kp)) - 2.0 * config.u_top() * sign / kp;
    // Reduce k*y/D modulo 2 so that sin(k*pi*y/D) keeps its zeros for large k.
    sum += bk * std::sin(pi * std::fmod(k * (y / d), 2.0)) * decay;
  }
  return analytical_steady(config, y) + sum;
}

Eigen::VectorXd analytical_profile(const FlowConfig& config, double t) {
  const auto y = config.interior_positions();
  Eigen::VectorXd u(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) u[static_cast<Eigen::Index>(i)] = analytical_poiseuille(config, y[i], t);
  return u;
}

Eigen::VectorXd analytical_steady_profile(const FlowConfig& config) {
  const auto y = config.interior_positions();
  Eigen::VectorXd u(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) u[static_cast<Eigen::Index>(i)] = analytical_steady(config, y[i]);
  return u;
}

ErrorMetrics error_metrics(const Eigen::VectorXd& u_q, const Eigen::VectorXd& u_ref) {
  if (u_q.size() != u_ref.size() || u_q.size() == 0) {
    throw std::invalid_argument("error_metrics needs two vectors of equal nonzero length");
  }
  const double nq = u_q.norm(), nr = u_ref.norm();
  if (nq == 0.0 || nr == 0.0) throw std::invalid_argument("error_metrics: zero vector");
  ErrorMetrics m;
  m.rms = std::sqrt((u_q - u_ref).squaredNorm() / static_cast<double>(u_q.size()));
  m.fidelity = std::min(1.0, std::abs(u_q.dot(u_ref)) / (nq * nr));
  return m;
}

}  // namespace qflow
