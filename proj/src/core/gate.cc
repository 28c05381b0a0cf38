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

#include "qflow/core/gate.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qflow {

namespace {

constexpr double kUnitaryTol = 1e-10;

// Exact check for small blocks, two fixed pseudo-random probes for large ones.
bool is_unitary(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) return false;
  const auto d = m.rows();
  if (d <= 64) {
    return (m * m.adjoint() - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() <
           kUnitaryTol;
  }
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> g;
  for (int probe = 0; probe < 2; ++probe) {
    Eigen::VectorXcd v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = Complex(g(rng), g(rng));
    v.normalize();
    Eigen::VectorXcd w = m * v;
    if (std::abs(w.norm() - 1.0) > kUnitaryTol) return false;
    Eigen::VectorXcd back = m.adjoint() * w;
    if ((back - v).cwiseAbs().maxCoeff() > 1e-9) return false;
  }
  return true;
}

std::size_t expected_targets(const GateOp& op) {
  switch (op.kind) {
    case GateKind::kSwap:
      return 2;
    case GateKind::kDiagonal:
    case GateKind::kUnitary:
      return op.targets.size();
    default:
      return 1;
  }
}

}  // namespace

GateOp& GateOp::controlled_by(unsigned qubit, bool on_one) {
  controls.push_back({qubit, on_one});
  return *this;
}

GateOp& GateOp::controlled_by(const std::vector<Control>& more) {
  controls.insert(controls.end(), more.begin(), more.end());
  return *this;
}

std::vector<unsigned> GateOp::support() const {
  std::vector<unsigned> s = targets;
  for (const auto& c : controls) s.push_back(c.qubit);
  return s;
}

std::string GateOp::category() const {
  const std::size_t nc = controls.size();
  auto with_controls = [nc](const std::string& base) {
    if (nc == 0) return base;
    if (nc == 1) return "C" + base;
    return "MC" + base;
  };
  switch (kind) {
    case GateKind::kH:
      return with_controls("H");
    case GateKind::kX:
      if (nc == 1) return "CNOT";
      return with_controls("X");
    case GateKind::kRy:
      return with_controls("RY");
    case GateKind::kPhase:
      return with_controls("PHASE");
    case GateKind::kDiagonal:
      return with_controls("DIAG");
    case GateKind::kUnitary:
      return with_controls("UNITARY");
    case GateKind::kSwap:
      return with_controls("SWAP");
  }
  return "?";
}

GateOp GateOp::inverse() const {
  GateOp inv = *this;
  switch (kind) {
    case GateKind::kRy:
    case GateKind::kPhase:
      inv.angle = -angle;
      break;
    case GateKind::kDiagonal:
      for (auto& d : inv.diagonal) d = std::conj(d);
      break;
    case GateKind::kUnitary:
      inv.matrix = std::make_shared<const Eigen::MatrixXcd>(matrix->adjoint());
      break;
    default:
      break;
  }
  return inv;
}

GateOp gate_h(unsigned q) { return GateOp{GateKind::kH, {q}, {}, 0.0, {}, nullptr}; }
GateOp gate_x(unsigned q) { return GateOp{GateKind::kX, {q}, {}, 0.0, {}, nullptr}; }
GateOp gate_cnot(unsigned control, unsigned target) {
  return gate_x(target).controlled_by(control);
}
GateOp gate_ry(unsigned q, double theta) {
  return GateOp{GateKind::kRy, {q}, {}, theta, {}, nullptr};
}
GateOp gate_phase(unsigned q, double phi) {
  return GateOp{GateKind::kPhase, {q}, {}, phi, {}, nullptr};
}
GateOp gate_swap(unsigned a, unsigned b) {
  return GateOp{GateKind::kSwap, {a, b}, {}, 0.0, {}, nullptr};
}
GateOp gate_diagonal(std::vector<unsigned> targets, std::vector<Complex> entries) {
  return GateOp{GateKind::kDiagonal, std::move(targets), {}, 0.0, std::move(entries), nullptr};
}
GateOp gate_unitary(std::vector<unsigned> targets, Eigen::MatrixXcd matrix) {
  return GateOp{GateKind::kUnitary, std::move(targets), {}, 0.0, {},
                std::make_shared<const Eigen::MatrixXcd>(std::move(matrix))};
}

void validate_gate(const GateOp& op, unsigned n_qubits) {
  if (op.targets.empty() || op.targets.size() != expected_targets(op)) {
    throw std::invalid_argument("gate has the wrong number of targets");
  }
  std::vector<unsigned> all = op.support();
  for (unsigned q : all) {
    if (q >= n_qubits) throw std::invalid_argument("qubit index out of range");
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw std::invalid_argument("gate targets and controls must be distinct qubits");
  }
  const std::size_t dim = std::size_t{1} << op.targets.size();
  if (op.kind == GateKind::kDiagonal) {
    if (op.diagonal.size() != dim) throw std::invalid_argument("diagonal payload size mismatch");
    for (const auto& d : op.diagonal) {
      if (std::abs(std::abs(d) - 1.0) > kUnitaryTol) {
        throw std::invalid_argument("diagonal payload is not unitary");
      }
    }
  }
  if (op.kind == GateKind::kUnitary) {
    if (!op.matrix || static_cast<std::size_t>(op.matrix->rows()) != dim) {
      throw std::invalid_argument("unitary payload size mismatch");
    }
    if (!is_unitary(*op.matrix)) throw std::invalid_argument("dense block is not unitary");
  }
}

Eigen::Matrix2cd single_qubit_matrix(const GateOp& op) {
  Eigen::Matrix2cd m;
  const double r = 1.0 / std::sqrt(2.0);
  switch (op.kind) {
    case GateKind::kH:
      m << r, r, r, -r;
      break;
    case GateKind::kX:
      m << 0, 1, 1, 0;
      break;
    case GateKind::kRy: {
      const double c = std::cos(op.angle / 2), s = std::sin(op.angle / 2);
      m << c, -s, s, c;
      break;
    }
    case GateKind::kPhase:
      m << 1, 0, 0, std::polar(1.0, op.angle);
      break;
    default:
      throw std::invalid_argument("not a single-qubit kind");
  }
  return m;
}

}  // namespace qflow
