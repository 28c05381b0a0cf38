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

/// Partial probability sums of a normalized vector: levels[l] has 2^l
/// entries, levels[l][i] is the probability that the first l qubits read i.
/// levels[n] holds the squared amplitudes and levels[0] = {1}.
struct ProbabilityTree {
  std::vector<std::vector<double>> levels;

  unsigned n_qubits() const { return static_cast<unsigned>(levels.size()) - 1; }
};

/// Throws std::invalid_argument for lengths that are not a power of two and
/// all-zero input. Entries are squared, so signs are ignored.
ProbabilityTree build_probability_tree(const std::vector<double>& amplitudes);

/// Ry angle 2*arccos(sqrt(zero_child / parent)), so the rotated qubit carries
/// conditional amplitudes (sqrt(f), sqrt(1 - f)). An empty node (both zero)
/// gives 0.
double qsp1_angle(double parent, double zero_child);

/// One program per qubit: level l is a uniformly controlled Ry on qubit l
/// with qubits 0..l-1 as controls, decomposed into Ry and CNOT gates.
std::vector<CircuitProgram> qsp1_levels(const std::vector<double>& target, unsigned n);
/// Concatenation of the levels. Target entries must be nonnegative.
CircuitProgram qsp1_synthesize(const std::vector<double>& target, unsigned n);
/// Real vectors of either sign: qsp1 on |v| plus one diagonal sign gate.
CircuitProgram prepare_real_state(const std::vector<double>& target, unsigned n);

}  // namespace qflow
