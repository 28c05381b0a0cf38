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

#include "qflow/analysis/spectral.h"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qflow {

double condition_number(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) throw std::invalid_argument("condition number needs a square matrix");
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  const double smin = sv[sv.size() - 1];
  if (!(smin > 1e-14 * std::max(1.0, sv[0]))) throw std::invalid_argument("singular matrix");
  return sv[0] / smin;
}

double condition_number(const LinearSystem& system) { return condition_number(system.dense()); }

double EigBounds::abs_max_bound() const { return std::max(std::abs(lambda_min_lo), std::abs(lambda_max_hi)); }

EigBounds eig_bounds(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  if (n < 2 || a.cols() != n) throw std::invalid_argument("eigenvalue bounds need a square matrix with N >= 2");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + a.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("eigenvalue bounds need a symmetric matrix");
  }
  const double nd = static_cast<double>(n);
  EigBounds b;
  b.beta1 = a.trace() / nd;
  // tr(A^2) = sum of squared entries for symmetric A.
  b.beta2 = std::sqrt(std::max(0.0, a.squaredNorm() / nd - b.beta1 * b.beta1));
  const double r = std::sqrt(nd - 1.0);
  b.lambda_min_lo = b.beta1 - b.beta2 * r;
  b.lambda_min_hi = b.beta1 - b.beta2 / r;
  b.lambda_max_lo = b.beta1 + b.beta2 / r;
  b.lambda_max_hi = b.beta1 + b.beta2 * r;
  return b;
}

LinearSystem matched_kappa_system(double kappa, const FlowConfig& base) {
  FlowConfig c = base;
  const Eigen::VectorXd u0 = Eigen::VectorXd::Constant(c.interior(), c.u_in);
  const double limit = condition_number(Eigen::MatrixXd(build_laplacian(c)));
  if (!(kappa > 1.0) || !(kappa < limit)) throw std::invalid_argument("kappa outside the reachable range of the BE1 family");
  double lo = 1e-12, hi = 1.0;
  auto kappa_at = [&](double dt) {
    c.dt = dt;
    return condition_number(build_be1_system(c, u0));
  };
  while (kappa_at(hi) < kappa) hi *= 10.0;
  for (int i = 0; i < 300 && hi / lo > 1.0 + 1e-14; ++i) {
    const double mid = std::sqrt(lo * hi);
    (kappa_at(mid) < kappa ? lo : hi) = mid;
  }
  c.dt = std::sqrt(lo * hi);
  return build_be1_system(c, u0);
}

}  // namespace qflow
