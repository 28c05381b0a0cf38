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
#include <string>

#include "qflow/cfd/systems.h"
#include "qflow/core/circuit.h"
#include "qflow/core/state.h"

namespace qflow {

/// H = [[0, A'], [A'^T, 0]] where A' is A padded to a power-of-two size with
/// an identity block scaled to sigma_max (the padded rows decouple from the
/// right-hand side). Solving H (0, x) = (b, 0) gives x = A^-1 b.
struct HermitianSystem {
  Eigen::MatrixXd original;
  Eigen::VectorXd rhs;
  int padded_dim = 0;
  Eigen::MatrixXd dilated;
  Eigen::VectorXd dilated_rhs;
  /// Ascending eigenvalues (pairs +-sigma) and orthonormal eigenvectors.
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  int dim() const { return static_cast<int>(original.rows()); }
  /// log2 of the dilated dimension.
  unsigned system_qubits() const;
  double max_abs_eigenvalue() const;
  /// Dense LU solution of the original system.
  Eigen::VectorXd classical_solution() const;
  /// Solution block (lower half, first N entries) of a dilated vector.
  Eigen::VectorXd solution_block(const Eigen::VectorXd& dilated_vector) const;
};

/// Throws std::invalid_argument for singular or non-square input.
HermitianSystem hermitian_dilation(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);
HermitianSystem hermitian_dilation(const LinearSystem& system);

/// e^{i H t0} from the eigen decomposition.
Eigen::MatrixXcd hamiltonian_unitary(const HermitianSystem& hsys, double t0);
/// Same for an arbitrary real symmetric matrix; throws for non-symmetric input.
Eigen::MatrixXcd hamiltonian_unitary(const Eigen::MatrixXd& h, double t0);

struct QPEConfig {
  unsigned q_pe = 8;
  double t0 = 1.0;
  /// Inversion constant C; 0 selects 2^-q_pe.
  double c_rot = 0.0;

  double inversion_constant() const;
  void validate() const;
};

/// Clock value k read as a signed phase: k/2^q below one half, k/2^q - 1 above.
double decode_phase(std::size_t k, unsigned q_pe);

struct HHLResult {
  /// Unit-norm solution of the original system.
  Eigen::VectorXd solution;
  /// Solution with its physical scale restored.
  Eigen::VectorXd scaled_solution;
  double success_probability = 0.0;
  /// Weight of the post-selected state outside the solution block.
  double block_leakage = 0.0;
  /// Post-selected, renormalized register state.
  AmplitudeState raw_state;
  QPEConfig config_used;
  CircuitStats stats;
  unsigned n_qubits = 0;
};

/// Register layout [ancilla | clock (q_pe) | system | preparation ancillas],
/// qubit 0 most significant. The QPE, inversion and uncompute part is built
/// once and reused for every right-hand side.
class HHLCircuit {
 public:
  HHLCircuit(const HermitianSystem& hsys, const QPEConfig& config, unsigned prep_ancillas = 0);

  /// b_prep acts on system qubits first, then its own ancillas, and must
  /// prepare dilated_rhs / |dilated_rhs| from |0>. rhs_norm restores the scale.
  /// Gate statistics are skipped when with_stats is false.
  HHLResult run(const CircuitProgram& b_prep, double rhs_norm, bool with_stats = true) const;

  /// b_prep followed by the core, on the full register.
  CircuitProgram program(const CircuitProgram& b_prep) const;

  unsigned n_qubits() const { return core_.n_qubits(); }
  unsigned ancilla() const { return 0; }
  unsigned clock_first() const { return 1; }
  unsigned system_first() const { return 1 + config_.q_pe; }
  const CircuitProgram& core() const { return core_; }
  const QPEConfig& config() const { return config_; }

 private:
  HermitianSystem hsys_;
  QPEConfig config_;
  unsigned system_qubits_;
  unsigned prep_ancillas_;
  CircuitProgram core_;
};

/// Signed QSP-1 preparation of the normalized dilated right-hand side.
CircuitProgram prepare_dilated_rhs(const HermitianSystem& hsys);

/// Full pipeline: b_prep, QPE, controlled inversion, inverse QPE and
/// projection onto ancilla = 1, clock = 0. Throws PostSelectionError when that
/// branch is empty.
HHLResult hhl_solve(const HermitianSystem& hsys, const QPEConfig& config, const CircuitProgram& b_prep);
HHLResult hhl_solve(const HermitianSystem& hsys, const QPEConfig& config);

/// ||u_q - u_c|| on unit vectors; the error measure used for scans.
double qlsa_error(const Eigen::VectorXd& quantum, const Eigen::VectorXd& classical);

/// JSON record: solution, success probability, configuration, gate stats.
std::string hhl_result_json(const HHLResult& result);

}  // namespace qflow
