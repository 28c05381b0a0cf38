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

#include "qflow/core/circuit.h"

#include <algorithm>
#include <stdexcept>

namespace qflow {

CircuitProgram& CircuitProgram::append(GateOp op) {
  validate_gate(op, n_qubits_);
  ops_.push_back(std::move(op));
  return *this;
}

CircuitProgram& CircuitProgram::append(const CircuitProgram& other,
                                       const std::vector<unsigned>& map) {
  if (map.size() < other.n_qubits()) throw std::invalid_argument("qubit map too short");
  for (const auto& op : other.ops()) {
    GateOp moved = op;
    for (auto& t : moved.targets) t = map[t];
    for (auto& c : moved.controls) c.qubit = map[c.qubit];
    append(std::move(moved));
  }
  return *this;
}

CircuitProgram& CircuitProgram::append_at(const CircuitProgram& other, unsigned offset) {
  std::vector<unsigned> map(other.n_qubits());
  for (unsigned q = 0; q < other.n_qubits(); ++q) map[q] = q + offset;
  return append(other, map);
}

CircuitProgram CircuitProgram::inverse() const {
  CircuitProgram inv(n_qubits_);
  inv.ops_.reserve(ops_.size());
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) inv.ops_.push_back(it->inverse());
  return inv;
}

CircuitProgram CircuitProgram::controlled_by(const std::vector<Control>& controls) const {
  CircuitProgram out(n_qubits_);
  for (const auto& op : ops_) {
    GateOp c = op;
    c.controlled_by(controls);
    out.append(std::move(c));
  }
  return out;
}

CircuitStats circuit_stats(const CircuitProgram& program) {
  CircuitStats stats;
  std::vector<std::size_t> layer(program.n_qubits(), 0);
  for (const auto& op : program.ops()) {
    ++stats.total;
    ++stats.by_category[op.category()];
    if (op.kind == GateKind::kX && op.controls.size() == 1) ++stats.cnot;
    const auto support = op.support();
    std::size_t level = 0;
    for (unsigned q : support) level = std::max(level, layer[q]);
    ++level;
    for (unsigned q : support) layer[q] = level;
    stats.depth = std::max(stats.depth, level);
  }
  return stats;
}

bool is_cnot_basis(const CircuitProgram& program) {
  for (const auto& op : program.ops()) {
    if (op.targets.size() != 1) return false;
    if (op.kind == GateKind::kDiagonal || op.kind == GateKind::kUnitary) return false;
    if (op.controls.empty()) continue;
    if (op.kind != GateKind::kX || op.controls.size() != 1 || !op.controls[0].on_one) return false;
  }
  return true;
}

}  // namespace qflow
