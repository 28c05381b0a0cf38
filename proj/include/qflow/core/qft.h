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

#include "qflow/core/circuit.h"
#include "qflow/core/state.h"

namespace qflow {

/// QFT over qubits [first, first+count): |x> -> N^-1/2 sum_k e^{+2 pi i x k / N} |k>,
/// with `first` the most significant bit of x. Built from H, controlled
/// phases and the closing swaps.
CircuitProgram qft_program(unsigned n_qubits, unsigned first, unsigned count);
/// Inverse transform, kernel e^{-2 pi i x k / N}.
CircuitProgram iqft_program(unsigned n_qubits, unsigned first, unsigned count);

void qft(AmplitudeState& state, unsigned first, unsigned count);
void iqft(AmplitudeState& state, unsigned first, unsigned count);

}  // namespace qflow
