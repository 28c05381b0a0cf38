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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qflow/core/gate.h"

namespace qflow {

struct CircuitStats {
  std::map<std::string, std::size_t> by_category;
  std::size_t total = 0;
  std::size_t cnot = 0;
  std::size_t depth = 0;
};

class CircuitProgram {
 public:
  explicit CircuitProgram(unsigned n_qubits = 0) : n_qubits_(n_qubits) {}

  unsigned n_qubits() const { return n_qubits_; }
  const std::vector<GateOp>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }

  /// Validates against the register width before storing.
  CircuitProgram& append(GateOp op);
  /// Appends every op of `other` with qubit q relabelled to map[q].
  CircuitProgram& append(const CircuitProgram& other, const std::vector<unsigned>& map);
  /// Appends `other` shifted so its qubit 0 lands on `offset`.
  CircuitProgram& append_at(const CircuitProgram& other, unsigned offset);

  CircuitProgram inverse() const;
  /// Copy where every op gains the extra controls.
  CircuitProgram controlled_by(const std::vector<Control>& controls) const;

 private:
  unsigned n_qubits_;
  std::vector<GateOp> ops_;
};

/// Gate counts by category, CNOT count (X with exactly one control) and
/// depth under greedy as-soon-as-possible layering of qubit supports.
CircuitStats circuit_stats(const CircuitProgram& program);

/// True when the program uses only one-qubit gates and single-control X.
bool is_cnot_basis(const CircuitProgram& program);

}  // namespace qflow
