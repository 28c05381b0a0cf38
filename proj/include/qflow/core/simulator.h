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
#include <map>
#include <string>
#include <vector>

#include "qflow/core/circuit.h"
#include "qflow/core/state.h"

namespace qflow {

/// Applies one gate in place as amplitude-pair (or amplitude-block) updates.
/// Indices that fail the control pattern are never visited.
void apply_gate(AmplitudeState& state, const GateOp& op);
void apply_program(AmplitudeState& state, const CircuitProgram& program);

/// Runs `program` on |0...0> and returns the final state.
AmplitudeState run_program(const CircuitProgram& program);

/// Probability that every listed qubit reads its listed value.
double pattern_probability(const AmplitudeState& state, const std::vector<Control>& pattern);

/// Projects qubit onto outcome (0 or 1), renormalizes and returns the
/// pre-projection probability. Throws PostSelectionError when it is below
/// `min_probability`.
double project_and_renormalize(AmplitudeState& state, unsigned qubit, int outcome,
                               double min_probability = 1e-28);
/// Same for a joint pattern over several qubits.
double project_pattern(AmplitudeState& state, const std::vector<Control>& pattern,
                       double min_probability = 1e-28);

/// Seeded shot sampling; keys are bit strings with qubit 0 first.
std::map<std::string, std::size_t> sample_measurements(const AmplitudeState& state,
                                                       std::size_t shots, std::uint64_t seed);

}  // namespace qflow
