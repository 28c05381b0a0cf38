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
#include <vector>

#include "qflow/core/circuit.h"
#include "qflow/core/state.h"

namespace qflow {

/// Register layout, most significant first:
///   up (1) | ub (r) | add (n) | ua (n) | a1 (n) | a2 (1).
/// `add` holds the grid address, `ua` the derivative state, `a1` the copy
/// compared by the swap test, `a2` the swap-test qubit, `ub` the amplitude
/// readout and `up` the squared-value flag.
struct QppRegisters {
  unsigned n = 0;
  unsigned r = 0;

  QppRegisters(unsigned address_qubits, unsigned phase_bits);
  unsigned total() const { return 3 * n + r + 2; }
  unsigned up() const { return 0; }
  unsigned ub(unsigned j = 0) const { return 1 + j; }
  unsigned add(unsigned j = 0) const { return 1 + r + j; }
  unsigned ua(unsigned j = 0) const { return 1 + r + n + j; }
  unsigned a1(unsigned j = 0) const { return 1 + r + 2 * n + j; }
  unsigned a2() const { return 1 + r + 3 * n; }
};

/// Steps 2-3 acting on (ua, a1, a2) for any address in a1: loads u' into ua
/// with `oracle` (an n-qubit program from |0>) and runs the unmeasured swap
/// test, leaving sqrt((1 + u'_s^2) / 2) on the a2 = |0> branch.
CircuitProgram swap_test_program(const QppRegisters& regs, const CircuitProgram& oracle);

/// Amplitude-estimation iterate Q = -V S_0 V^dag S_chi with V the swap-test
/// program, S_chi the sign flip of a2 = |0> and S_0 the reflection about
/// ua = 0, a2 = 0, a1 = add. Its eigenphases are +-2 pi beta with
/// sin(pi beta) = sqrt((1 + u'^2) / 2).
CircuitProgram grover_iterate(const QppRegisters& regs, const CircuitProgram& oracle);

/// Hadamards on ub, controlled Q^(2^(r-1-j)) from ub_j and the inverse QFT.
CircuitProgram qadc_program(const QppRegisters& regs, const CircuitProgram& oracle);

/// a(gamma) = 2 sin^2(pi gamma) - 1 clamped to [0, 1]; theta = 2 asin(a).
double squaring_amplitude(double gamma);
double squaring_angle(double gamma);
struct SquaringTable {
  std::vector<double> theta;
  /// Readouts whose raw value 2 sin^2(pi gamma) - 1 was negative.
  std::size_t clamped = 0;
};
SquaringTable squaring_table(unsigned r);
/// Ry on up controlled by every ub pattern with a nonzero angle.
CircuitProgram squaring_program(const QppRegisters& regs);

/// Step 1: Hadamards on add (or X gates selecting one address when
/// address >= 0), then add is copied into a1.
CircuitProgram address_program(const QppRegisters& regs, long address = -1);

/// Single-address readout distribution of ub (length 2^r).
std::vector<double> qadc_readout(const CircuitProgram& oracle, unsigned r, long address);

/// Full mean-square circuit: address, swap test, QADC, squaring, the inverse
/// of the first three stages and Hadamards on add. The amplitude of
/// |up = 1, rest = 0> equals the mean over addresses of E[a(gamma)].
CircuitProgram mean_square_program(const QppRegisters& regs, const CircuitProgram& oracle);

struct MeanSquareResult {
  /// Amplitude of |up = 1, 0...0>; approximately (1/N) sum_s u'_s^2.
  double amplitude = 0.0;
  std::size_t clamped = 0;
  unsigned n_qubits = 0;
  std::size_t gates = 0;
};
MeanSquareResult run_mean_square(const CircuitProgram& oracle, unsigned r);

}  // namespace qflow
