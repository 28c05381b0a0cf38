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

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qflow/core/circuit.h"

namespace qflow {

struct SparseEntry {
  std::uint64_t index = 0;
  double value = 0.0;
};

/// Reduced, weighted decision diagram of a normalized real state.
///
/// A node at `level` l describes a unit vector over qubits l..n-1:
/// weight[0] |0> (x) child[0] + weight[1] |1> (x) child[1], where edge 0 is the
/// dashed edge and edge 1 the solid one. A child of -1 is a zero edge. When
/// a child sits deeper than l + 1 the skipped qubits are in |+>; that is how
/// a node with two identical, equally weighted subtrees is eliminated.
/// Identical nodes are shared. nodes[0] is the terminal (level n).
struct DecisionDiagram {
  struct Node {
    unsigned level = 0;
    int child[2] = {-1, -1};
    double weight[2] = {0.0, 0.0};
  };

  unsigned n_qubits = 0;
  std::vector<Node> nodes;
  int root = -1;
  /// Norm of the input before normalization.
  double norm = 0.0;
  std::size_t nonzeros = 0;
  /// Nodes removed by the identical-children rule.
  std::size_t eliminated = 0;

  /// Number of root-to-terminal paths k.
  std::size_t paths() const;
  /// True when some node still has two identical, equally weighted children.
  bool has_redundant_node() const;
  /// Dense amplitudes (normalized) reconstructed from the diagram.
  std::vector<double> to_dense() const;
};

/// Entries must have distinct indices below 2^n and nonnegative values.
DecisionDiagram build_decision_diagram(const std::vector<SparseEntry>& entries, unsigned n);

/// Sparse state preparation on n + 1 qubits; qubit n is the single ancilla
/// and ends in |0>. Only one-qubit gates and CNOTs are emitted.
CircuitProgram qsp2_synthesize(const std::vector<SparseEntry>& entries, unsigned n);
CircuitProgram qsp2_synthesize(const DecisionDiagram& dd);
constexpr unsigned kQsp2Ancillas = 1;

/// 100 * (1 - cnot(p2) / cnot(p1)); 0 when p1 has no CNOTs.
double cnot_report(const CircuitProgram& p1, const CircuitProgram& p2);

/// "index,value" rows; a header line and '#' comments are skipped.
std::vector<SparseEntry> read_sparse_csv(std::istream& in);
std::vector<double> sparse_to_dense(const std::vector<SparseEntry>& entries, unsigned n);
std::vector<SparseEntry> dense_to_sparse(const std::vector<double>& values, double tol = 0.0);

}  // namespace qflow
