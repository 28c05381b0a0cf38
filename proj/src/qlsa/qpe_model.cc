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

#include "qflow/qlsa/qpe_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qflow {

double fejer_weight(double delta, unsigned q_pe) {
  const double m = std::ldexp(1.0, static_cast<int>(q_pe));
  const double s = std::sin(std::numbers::pi * delta);
  if (std::abs(s) < 1e-15) return 1.0;
  const double num = std::sin(std::numbers::pi * m * delta);
  return (num * num) / (m * m * s * s);
}

Eigen::VectorXd qpe_inverse_gains(const Eigen::VectorXd& eigenvalues, const QPEConfig& config) {
  config.validate();
  const unsigned q = config.q_pe;
  const std::size_t m = std::size_t{1} << q;
  const double c = config.inversion_constant();
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> ratio(m, 0.0);
  for (std::size_t k = 1; k < m; ++k) ratio[k] = std::clamp(c / decode_phase(k, q), -1.0, 1.0);
  Eigen::VectorXd g(eigenvalues.size());
  for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
    const double phi = eigenvalues[j] * config.t0 / two_pi;
    double acc = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
      acc += fejer_weight(phi - static_cast<double>(k) / static_cast<double>(m), q) * ratio[k];
    }
    g[j] = acc * config.t0 / (two_pi * c);
  }
  return g;
}

Eigen::MatrixXd hhl_model_operator(const HermitianSystem& hsys, const QPEConfig& config) {
  const Eigen::VectorXd g = qpe_inverse_gains(hsys.eigenvalues, config);
  return hsys.eigenvectors * g.asDiagonal() * hsys.eigenvectors.transpose();
}

Eigen::MatrixXd hhl_model_inverse(const HermitianSystem& hsys, const QPEConfig& config) {
  return hhl_model_operator(hsys, config).block(hsys.padded_dim, 0, hsys.dim(), hsys.dim());
}

Eigen::VectorXd hhl_model_solution(const HermitianSystem& hsys, const QPEConfig& config) {
  const Eigen::VectorXd x = hhl_model_inverse(hsys, config) * hsys.rhs;
  return x.normalized();
}

T0Optimum optimize_t0(double t_max, const std::function<double(double)>& objective, int samples) {
  if (!(t_max > 0.0) || samples < 3) throw std::invalid_argument("t0 search needs t_max > 0 and samples >= 3");
  const double step = t_max / samples;
  auto eval = [&objective](double t) {
    const double v = objective(t);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  T0Optimum best{0.0, std::numeric_limits<double>::infinity()};
  int best_i = -1;
  for (int i = 1; i <= samples; ++i) {
    const double v = eval(i * step);
    if (v < best.objective) {
      best = {i * step, v};
      best_i = i;
    }
  }
  if (best_i < 0) throw std::runtime_error("t0 objective is not finite anywhere in the search range");
  double a = (best_i - 1) * step, b = std::min(t_max, (best_i + 1) * step);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 60 && b - a > 1e-12 * t_max; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = eval(x2);
    }
  }
  if (f1 < best.objective) best = {x1, f1};
  if (f2 < best.objective) best = {x2, f2};
  return best;
}

double max_t0(const HermitianSystem& hsys) { return std::numbers::pi / hsys.max_abs_eigenvalue(); }

T0Optimum optimize_t0_for_solution(const HermitianSystem& hsys, unsigned q_pe, double c_rot) {
  const Eigen::VectorXd exact = hsys.classical_solution();
  return optimize_t0(max_t0(hsys) * (1.0 - 1e-9), [&](double t0) {
    const QPEConfig cfg{q_pe, t0, c_rot};
    const Eigen::VectorXd x = hhl_model_inverse(hsys, cfg) * hsys.rhs;
    if (!(x.norm() > 0.0)) return std::numeric_limits<double>::infinity();
    return qlsa_error(x, exact);
  });
}

}  // namespace qflow
