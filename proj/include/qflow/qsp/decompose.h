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

#include <vector>

#include "qflow/core/circuit.h"

namespace qflow {

/// Qubits a decomposition may borrow. Clean qubits are known to be |0> and
/// are returned to |0>; dirty qubits may hold anything and are restored.
struct Scratch {
  std::vector<unsigned> clean;
  std::vector<unsigned> dirty;
};

/// Toffoli in six CNOTs (H, T, T-dagger pattern).
void append_toffoli(CircuitProgram& p, unsigned c1, unsigned c2, unsigned target);
/// Toffoli up to a diagonal sign on |c1 c2 t> = |1 0 1>, three CNOTs. Only
/// valid in compute/uncompute pairs whose middle part never acts on the
/// qubits involved except as controls.
void append_relative_toffoli(CircuitProgram& p, unsigned c1, unsigned c2, unsigned target);
/// Controlled Ry in two CNOTs.
void append_cry(CircuitProgram& p, unsigned control, unsigned target, double theta);

/// Multi-controlled X in the CNOT basis. Negative-polarity controls are
/// conjugated with X. Uses a clean V-chain when enough clean scratch is
/// available, the dirty-ancilla chain with 4(m-2) Toffolis otherwise, and a
/// split into two halves around one borrowed qubit as the last resort.
/// Throws std::invalid_argument when no decomposition fits.
void append_mcx(CircuitProgram& p, const std::vector<Control>& controls, unsigned target,
                const Scratch& scratch);
/// Multi-controlled Ry. With a clean scratch qubit the control conjunction is
/// computed into it with relative-phase Toffolis and a single controlled Ry
/// acts from there; without one it falls back to Ry(t/2) MCX Ry(-t/2) MCX.
void append_mcry(CircuitProgram& p, const std::vector<Control>& controls, unsigned target,
                 double theta, const Scratch& scratch);

/// Uniformly controlled Ry: for control value x (controls[0] most
/// significant), rotate the target by angles[x]. Gray-code sequence of 2^k
/// rotations and 2^k CNOTs; constant angle lists collapse to one Ry and all
/// zero lists emit nothing.
void append_uniformly_controlled_ry(CircuitProgram& p, const std::vector<unsigned>& controls,
                                    unsigned target, const std::vector<double>& angles);

}  // namespace qflow
