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

#include "qflow/qpp/qadc.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qflow/core/gate.h"
#include "qflow/core/qft.h"
#include "qflow/core/simulator.h"

namespace qflow {

QppRegisters::QppRegisters(unsigned address_qubits, unsigned phase_bits) : n(address_qubits), r(phase_bits) {
  // Two phase bits already resolve the exact readouts 1/2, 1/4 and 3/4.
  if (n < 1) throw std::invalid_argument("address register needs at least one qubit");
  if (r < 2) throw std::invalid_argument("readout register needs at least two qubits");
  if (total() > 30) throw std::invalid_argument("register exceeds 30 qubits");
}

CircuitProgram swap_test_program(const QppRegisters& regs, const CircuitProgram& oracle) {
  if (oracle.n_qubits() != regs.n) throw std::invalid_argument("oracle width must equal the address width");
  CircuitProgram p(regs.total());
  p.append_at(oracle, regs.ua());
  p.append(gate_h(regs.a2()));
  for (unsigned j = 0; j < regs.n; ++j) p.append(gate_swap(regs.ua(j), regs.a1(j)).controlled_by(regs.a2()));
  p.append(gate_h(regs.a2()));
  return p;
}

CircuitProgram grover_iterate(const QppRegisters& regs, const CircuitProgram& oracle) {
  const CircuitProgram v = swap_test_program(regs, oracle);
  CircuitProgram q(regs.total());
  q.append(gate_diagonal({regs.a2()}, {-1.0, 1.0}));
  q.append_at(v.inverse(), 0);
  for (unsigned j = 0; j < regs.n; ++j) q.append(gate_cnot(regs.add(j), regs.a1(j)));
  GateOp s0 = gate_diagonal({regs.a2()}, {-1.0, 1.0});
  for (unsigned j = 0; j < regs.n; ++j) {
    s0.controlled_by(regs.ua(j), false);
    s0.controlled_by(regs.a1(j), false);
  }
  q.append(s0);
  for (unsigned j = 0; j < regs.n; ++j) q.append(gate_cnot(regs.add(j), regs.a1(j)));
  q.append_at(v, 0);
  // The overall sign; a diagonal so that it survives being controlled.
  q.append(gate_diagonal({regs.a2()}, {-1.0, -1.0}));
  return q;
}

CircuitProgram qadc_program(const QppRegisters& regs, const CircuitProgram& oracle) {
  const CircuitProgram q = grover_iterate(regs, oracle);
  CircuitProgram p(regs.total());
  for (unsigned j = 0; j < regs.r; ++j) p.append(gate_h(regs.ub(j)));
  for (unsigned j = 0; j < regs.r; ++j) {
    const CircuitProgram cq = q.controlled_by({Control{regs.ub(j), true}});
    const std::size_t reps = std::size_t{1} << (regs.r - 1 - j);
    for (std::size_t k = 0; k < reps; ++k) p.append_at(cq, 0);
  }
  p.append_at(iqft_program(regs.r, 0, regs.r), regs.ub());
  return p;
}

double squaring_amplitude(double gamma) {
  const double s = std::sin(std::numbers::pi * gamma);
  return std::clamp(2.0 * s * s - 1.0, 0.0, 1.0);
}

double squaring_angle(double gamma) { return 2.0 * std::asin(squaring_amplitude(gamma)); }

SquaringTable squaring_table(unsigned r) {
  SquaringTable t;
  const std::size_t m = std::size_t{1} << r;
  t.theta.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double gamma = static_cast<double>(k) / static_cast<double>(m);
    const double s = std::sin(std::numbers::pi * gamma);
    // gamma = 1/4 and 3/4 sit at zero up to rounding.
    if (2.0 * s * s - 1.0 < -1e-12) ++t.clamped;
    t.theta[k] = squaring_angle(gamma);
  }
  return t;
}

CircuitProgram squaring_program(const QppRegisters& regs) {
  const SquaringTable table = squaring_table(regs.r);
  CircuitProgram p(regs.total());
  for (std::size_t k = 0; k < table.theta.size(); ++k) {
    if (table.theta[k] == 0.0) continue;
    GateOp op = gate_ry(regs.up(), table.theta[k]);
    for (unsigned j = 0; j < regs.r; ++j) op.controlled_by(regs.ub(j), ((k >> (regs.r - 1 - j)) & 1u) != 0);
    p.append(std::move(op));
  }
  return p;
}

CircuitProgram address_program(const QppRegisters& regs, long address) {
  CircuitProgram p(regs.total());
  if (address >= static_cast<long>(std::size_t{1} << regs.n)) throw std::invalid_argument("address out of range");
  for (unsigned j = 0; j < regs.n; ++j) {
    if (address < 0) {
      p.append(gate_h(regs.add(j)));
    } else if ((address >> (regs.n - 1 - j)) & 1) {
      p.append(gate_x(regs.add(j)));
    }
  }
  for (unsigned j = 0; j < regs.n; ++j) p.append(gate_cnot(regs.add(j), regs.a1(j)));
  return p;
}

std::vector<double> qadc_readout(const CircuitProgram& oracle, unsigned r, long address) {
  const QppRegisters regs(oracle.n_qubits(), r);
  CircuitProgram p = address_program(regs, address);
  p.append_at(swap_test_program(regs, oracle), 0);
  p.append_at(qadc_program(regs, oracle), 0);
  const AmplitudeState s = run_program(p);
  std::vector<double> dist(std::size_t{1} << r, 0.0);
  const unsigned total = regs.total();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t k = (i >> (total - 1 - regs.r)) & ((std::size_t{1} << r) - 1);
    dist[k] += std::norm(s[i]);
  }
  return dist;
}

CircuitProgram mean_square_program(const QppRegisters& regs, const CircuitProgram& oracle) {
  CircuitProgram pre = address_program(regs);
  pre.append_at(swap_test_program(regs, oracle), 0);
  pre.append_at(qadc_program(regs, oracle), 0);
  CircuitProgram p = pre;
  p.append_at(squaring_program(regs), 0);
  p.append_at(pre.inverse(), 0);
  return p;
}

MeanSquareResult run_mean_square(const CircuitProgram& oracle, unsigned r) {
  const QppRegisters regs(oracle.n_qubits(), r);
  const CircuitProgram p = mean_square_program(regs, oracle);
  const AmplitudeState s = run_program(p);
  MeanSquareResult out;
  out.amplitude = s[std::size_t{1} << (regs.total() - 1)].real();
  out.clamped = squaring_table(r).clamped;
  out.n_qubits = regs.total();
  out.gates = p.size();
  return out;
}

}  // namespace qflow
