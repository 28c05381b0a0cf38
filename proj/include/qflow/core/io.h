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

#include <iosfwd>
#include <string>

#include "qflow/core/circuit.h"
#include "qflow/core/state.h"

namespace qflow {

// Circuit text format, one op per line:
//
//   QUBITS <n>
//   <KIND> <t0[,t1...]> [c:<q>|c:!<q>]... [params...]
//
// KIND is one of H X RY PHASE SWAP DIAG UNITARY. Controls are prefixed with
// "c:" and a leading '!' selects the |0> polarity. RY and PHASE take one angle;
// DIAG takes 2^k entries and UNITARY 4^k entries (row-major), each written as
// a "re,im" pair. Lines starting with '#' are comments.
void write_circuit(std::ostream& out, const CircuitProgram& program);
CircuitProgram read_circuit(std::istream& in);
std::string circuit_to_text(const CircuitProgram& program);
CircuitProgram circuit_from_text(const std::string& text);

/// CSV with header "index,re,im".
void write_state_csv(std::ostream& out, const AmplitudeState& state);
AmplitudeState read_state_csv(std::istream& in);

}  // namespace qflow
