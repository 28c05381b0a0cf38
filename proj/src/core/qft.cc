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

#include "qflow/core/qft.h"

#include <numbers>
#include <stdexcept>

#include "qflow/core/simulator.h"

namespace qflow {

CircuitProgram qft_program(unsigned n_qubits, unsigned first, unsigned count) {
  if (count == 0) throw std::invalid_argument("empty qubit range");
  if (first + count > n_qubits) throw std::invalid_argument("qubit range exceeds register");
  CircuitProgram p(n_qubits);
  for (unsigned j = 0; j < count; ++j) {
    p.append(gate_h(first + j));
    for (unsigned k = j + 1; k < count; ++k) {
      const double phi = 2.0 * std::numbers::pi / static_cast<double>(1ull << (k - j + 1));
      p.append(gate_phase(first + j, phi).controlled_by(first + k));
    }
  }
  for (unsigned j = 0; j < count / 2; ++j) p.append(gate_swap(first + j, first + count - 1 - j));
  return p;
}

CircuitProgram iqft_program(unsigned n_qubits, unsigned first, unsigned count) {
  return qft_program(n_qubits, first, count).inverse();
}

void qft(AmplitudeState& state, unsigned first, unsigned count) {
  apply_program(state, qft_program(state.n_qubits(), first, count));
}

void iqft(AmplitudeState& state, unsigned first, unsigned count) {
  apply_program(state, iqft_program(state.n_qubits(), first, count));
}

}  // namespace qflow
