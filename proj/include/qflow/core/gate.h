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
#include <memory>
#include <string>
#include <vector>

#include "qflow/core/state.h"

namespace qflow {

/// Base operation. Controlled variants (CNOT, controlled-Ry,
/// controlled-phase, ...) are the same kinds with a non-empty control list.
enum class GateKind { kH, kX, kRy, kPhase, kDiagonal, kUnitary, kSwap };

struct Control {
  unsigned qubit = 0;
  bool on_one = true;
  bool operator==(const Control&) const = default;
};

struct GateOp {
  GateKind kind = GateKind::kH;
  /// One qubit for H/X/Ry/Phase, two for Swap, k for Diagonal/Unitary
  /// (targets[0] is the most significant bit of the local index).
  std::vector<unsigned> targets;
  std::vector<Control> controls;
  /// Ry angle or Phase angle, radians.
  double angle = 0.0;
  /// Diagonal entries (length 2^k).
  std::vector<Complex> diagonal;
  /// Dense block (2^k x 2^k), shared so copies of large programs stay cheap.
  std::shared_ptr<const Eigen::MatrixXcd> matrix;

  GateOp& controlled_by(unsigned qubit, bool on_one = true);
  GateOp& controlled_by(const std::vector<Control>& more);
  /// All qubits the op touches (targets then controls).
  std::vector<unsigned> support() const;
  /// Category used in statistics: H, X, CNOT, MCX, RY, CRY, MCRY, PHASE, ...
  std::string category() const;
  /// Inverse operation.
  GateOp inverse() const;
};

GateOp gate_h(unsigned q);
GateOp gate_x(unsigned q);
GateOp gate_cnot(unsigned control, unsigned target);
GateOp gate_ry(unsigned q, double theta);
GateOp gate_phase(unsigned q, double phi);
GateOp gate_swap(unsigned a, unsigned b);
GateOp gate_diagonal(std::vector<unsigned> targets, std::vector<Complex> entries);
GateOp gate_unitary(std::vector<unsigned> targets, Eigen::MatrixXcd matrix);

/// Throws std::invalid_argument for out-of-range or overlapping indices,
/// wrong payload sizes and non-unitary payloads (tolerance 1e-10).
void validate_gate(const GateOp& op, unsigned n_qubits);

/// 2x2 matrix of the single-target kinds.
Eigen::Matrix2cd single_qubit_matrix(const GateOp& op);

}  // namespace qflow
