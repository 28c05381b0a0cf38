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

#include "qflow/qpp/derivative.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qflow/core/errors.h"
#include "qflow/core/qft.h"
#include "qflow/core/simulator.h"

namespace qflow {

namespace {

unsigned ceil_log2(int n) {
  unsigned s = 0;
  while ((1 << s) < n) ++s;
  return s;
}

}  // namespace

Eigen::VectorXd DerivativeResult::values(double input_norm) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(zero ? 0 : state.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = state[static_cast<std::size_t>(i)].real() * scale * input_norm;
  return v;
}

DerivativeOp spectral_derivative(unsigned qubits, double length) {
  if (qubits < 1 || !(length > 0.0)) throw std::invalid_argument("spectral derivative needs qubits >= 1 and length > 0");
  DerivativeOp op;
  op.method = DerivativeMethod::kSpectral;
  op.qubits = qubits;
  op.points = 1 << qubits;
  const int n = op.points;
  const double two_pi = 2.0 * std::numbers::pi;
  op.lambda_diag = Eigen::VectorXcd::Zero(n);
  double lmax = 0.0;
  for (int k = 0; k < n; ++k) {
    double w = 0.0;
    if (k < n / 2) w = two_pi * k / length;
    if (k > n / 2) w = two_pi * (k - n) / length;
    op.lambda_diag[k] = Complex(0.0, w);
    lmax = std::max(lmax, std::abs(w));
  }
  if (lmax == 0.0) lmax = 1.0;
  // i w = lmax * (i e^{i phi} + i e^{-i phi}) / 2 with cos(phi) = w / lmax.
  Eigen::VectorXcd plus(n), minus(n);
  for (int k = 0; k < n; ++k) {
    const double phi = std::acos(std::clamp(op.lambda_diag[k].imag() / lmax, -1.0, 1.0));
    plus[k] = Complex(0.0, 1.0) * std::polar(1.0, phi);
    minus[k] = Complex(0.0, 1.0) * std::polar(1.0, -phi);
  }
  op.decomposition = {{lmax / 2, plus.asDiagonal()}, {lmax / 2, minus.asDiagonal()}};
  return op;
}

DerivativeOp lcu_fd_derivative(int points, double h) {
  DerivativeOp op;
  op.method = DerivativeMethod::kLcuFd;
  op.points = points;
  op.qubits = ceil_log2(points);
  op.decomposition = central_difference_decomposition(points, h);
  return op;
}

DerivativeResult quantum_derivative(const AmplitudeState& u, const DerivativeOp& op) {
  const unsigned n = op.qubits;
  if (u.n_qubits() != n) throw std::invalid_argument("state width does not match the derivative operator");
  const double norm = u.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("zero input state");
  DerivativeResult r;
  AmplitudeState work = u;
  if (op.method == DerivativeMethod::kSpectral) {
    iqft(work, 0, n);
  } else {
    // Embed (x, 0) on one extra most significant qubit.
    std::vector<Complex> amps(work.size() * 2, 0.0);
    for (std::size_t i = 0; i < work.size(); ++i) amps[i] = work[i];
    for (auto i = static_cast<std::size_t>(op.points); i < work.size(); ++i) amps[i] = 0.0;
    work = AmplitudeState::from_amplitudes(std::move(amps));
  }
  work.normalize();
  double beta_sum = 0.0;
  for (const auto& t : op.decomposition) beta_sum += t.beta;
  LcuResult lcu;
  try {
    lcu = lcu_apply(op.decomposition, work);
  } catch (const PostSelectionError&) {
    r.zero = true;
    return r;
  }
  r.success_probability = lcu.success_probability;
  double scale = beta_sum * std::sqrt(lcu.success_probability);
  AmplitudeState out = std::move(lcu.state);
  if (op.method == DerivativeMethod::kSpectral) {
    qft(out, 0, n);
  } else {
    const double keep = pattern_probability(out, {{0, false}});
    if (!(keep > 1e-24)) {
      r.zero = true;
      return r;
    }
    std::vector<Complex> amps(std::size_t{1} << n, 0.0);
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = out[i];
    out = AmplitudeState::from_amplitudes(std::move(amps));
    out.normalize();
    r.success_probability *= keep;
    scale *= std::sqrt(keep);
  }
  if (!(scale > 1e-12 * beta_sum)) {
    r.zero = true;
    return r;
  }
  r.state = std::move(out);
  r.scale = scale;
  return r;
}

Eigen::VectorXd central_difference(const Eigen::VectorXd& interior, double h, double wall_lo, double wall_hi) {
  const Eigen::Index n = interior.size();
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lo = i > 0 ? interior[i - 1] : wall_lo;
    const double hi = i + 1 < n ? interior[i + 1] : wall_hi;
    d[i] = (hi - lo) / (2.0 * h);
  }
  return d;
}

Eigen::VectorXd full_grid_gradient(const Eigen::VectorXd& grid, double h) {
  const Eigen::Index n = grid.size();
  if (n < 3) throw std::invalid_argument("full-grid gradient needs at least 3 points");
  Eigen::VectorXd d(n);
  d[0] = (-3.0 * grid[0] + 4.0 * grid[1] - grid[2]) / (2.0 * h);
  d[n - 1] = (3.0 * grid[n - 1] - 4.0 * grid[n - 2] + grid[n - 3]) / (2.0 * h);
  for (Eigen::Index i = 1; i + 1 < n; ++i) d[i] = (grid[i + 1] - grid[i - 1]) / (2.0 * h);
  return d;
}

Eigen::VectorXd spectral_derivative_classical(const Eigen::VectorXd& u, double length) {
  const Eigen::Index n = u.size();
  const double two_pi = 2.0 * std::numbers::pi;
  Eigen::VectorXcd hat = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j) hat[k] += u[j] * std::polar(1.0, -two_pi * static_cast<double>(j * k) / n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double w = 0.0;
    if (k < n / 2) w = two_pi * k / length;
    if (k > n / 2) w = two_pi * (k - n) / length;
    hat[k] *= Complex(0.0, w);
  }
  Eigen::VectorXd d(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Complex s = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) s += hat[k] * std::polar(1.0, two_pi * static_cast<double>(j * k) / n);
    d[j] = s.real() / static_cast<double>(n);
  }
  return d;
}

}  // namespace qflow
