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
#include <Eigen/Sparse>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qflow/cfd/flow_config.h"

namespace qflow {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct LinearSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
  Scheme scheme = Scheme::kBE1;
  /// Unknowns per time level and number of time levels (1 for BE1).
  int block_size = 0;
  int blocks = 1;

  int dim() const { return static_cast<int>(rhs.size()); }
  /// Largest number of nonzeros in a row.
  int sparsity() const;
  /// sigma_max / sigma_min from a dense SVD, computed on first use.
  double kappa() const;
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }

 private:
  mutable std::optional<double> kappa_;
};

/// (1, -2, 1) / h^2 over the interior points.
SparseMatrix build_laplacian(const FlowConfig& config);
/// nu * Laplacian, the operator of the semi-discrete system du/dt = A u + f.
SparseMatrix system_operator(const FlowConfig& config);
/// -dp/dx plus the wall contributions nu * u_wall / h^2.
Eigen::VectorXd forcing_vector(const FlowConfig& config);

/// (I - A dt) u = u_prev + f dt.
LinearSystem build_be1_system(const FlowConfig& config, const Eigen::VectorXd& u_prev);
/// Lower block-bidiagonal one-shot systems over m + p + 1 time levels.
/// BE2 rows: (I - A dt) u^j - u^{j-1} = f dt for j <= m, u^j - u^{j-1} = 0 after.
/// FE rows:  u^j - (I + A dt) u^{j-1} = f dt for j <= m, u^j - u^{j-1} = 0 after.
/// FE throws StabilityError when dt / h^2 > 0.5.
LinearSystem build_be2_system(const FlowConfig& config);
LinearSystem build_fe_system(const FlowConfig& config);
LinearSystem build_one_shot_system(const FlowConfig& config, Scheme scheme);

/// Sequential classical stepping; element j is u^j (element 0 = initial).
std::vector<Eigen::VectorXd> march(const FlowConfig& config, Scheme scheme, int steps);
/// p = 0 when the marched solution already satisfies
/// ||u^m - u^{m-1}||_inf < 1e-6, else 1 (the appended copy is then the
/// steady-state copy). An explicit config.p_pad wins.
int default_padding(const FlowConfig& config, Scheme scheme);

Eigen::VectorXd solve_dense(const LinearSystem& system);
/// Block forward substitution for one-shot systems.
Eigen::VectorXd solve_block_forward(const LinearSystem& system);
/// Time level j of a one-shot solution vector.
Eigen::VectorXd block(const Eigen::VectorXd& x, int block_size, int j);

struct Be1Iteration {
  std::vector<Eigen::VectorXd> profiles;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};
/// Classical BE1 iteration from u_in until ||u^{j+1} - u^j||_inf <= tol.
Be1Iteration iterate_be1_classical(const FlowConfig& config, double tol = 1e-6, int max_iter = 0);

/// Prepends/appends the wall values to an interior profile.
std::vector<double> with_walls(const FlowConfig& config, const Eigen::VectorXd& interior);

/// Matrix-Market coordinate format (1-based indices) and a one-column CSV.
void write_matrix_market(std::ostream& out, const SparseMatrix& matrix);
void write_vector_csv(std::ostream& out, const Eigen::VectorXd& v, const char* name = "value");

}  // namespace qflow
