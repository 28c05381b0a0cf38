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

#include "qflow/core/circuit.h"
#include "qflow/core/state.h"

namespace qflow {

struct LcuTerm {
  double beta = 0.0;
  Eigen::MatrixXcd unitary;
};
using LcuDecomposition = std::vector<LcuTerm>;

struct LcuResult {
  /// Normalized sum_i beta_i U_i |phi> on the system register.
  AmplitudeState state;
  double success_probability = 0.0;
  /// sum_i beta_i; ||sum beta_i U_i phi|| = beta_sum * sqrt(success_probability).
  double beta_sum = 0.0;
};

/// sum_i beta_i U_i as a dense matrix.
Eigen::MatrixXcd lcu_matrix(const LcuDecomposition& terms);

/// Prepare / select / unprepare on [select (l qubits) | system]. The term
/// list is padded with zero-weight identities to a power of two.
CircuitProgram lcu_program(const LcuDecomposition& terms, unsigned system_qubits);

/// Runs lcu_program on |0>^l |phi> and projects the select register on
/// |0>^l. Throws PostSelectionError for a cancelled (measure-zero) branch and
/// std::invalid_argument for an empty or all-zero decomposition.
LcuResult lcu_apply(const LcuDecomposition& terms, const AmplitudeState& state);

/// Decomposition of an N x N real banded matrix acting on a register of
/// 2N' = 2 * 2^ceil(log2 N) amplitudes. Input vectors are embedded as
/// (x, 0) and the product is read from the first N entries after projecting
/// the most significant system qubit on |0>. Each constant band uses one
/// signed cyclic shift; a varying band v uses diag(e^{+-i phi}) times the
/// shift, with v = v_max cos(phi).
LcuDecomposition banded_decomposition(const Eigen::MatrixXd& a);

/// (S+ - S-) / (2h) on n interior points, embedded as above.
LcuDecomposition central_difference_decomposition(int n, double h);

/// Periodic (S+ - S-) / (2h) on a 2^qubits point ring; no embedding.
LcuDecomposition periodic_central_difference(unsigned qubits, double h);

/// Pauli-string expansion sum_P c_P P of a 2^k x 2^k matrix.
LcuDecomposition pauli_decomposition(const Eigen::MatrixXcd& a);

/// 2^s x 2^s cyclic shift (S x)_i = x_{(i + offset) mod 2^s}.
Eigen::MatrixXcd cyclic_shift(int dim, int offset);

}  // namespace qflow
