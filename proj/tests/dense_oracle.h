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

// Reference semantics for test programs: every gate becomes a full
// 2^n x 2^n matrix assembled from Kronecker products of 2x2 factors, which is
// exactly what the simulator must never do.

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "qflow/core/circuit.h"

namespace qflow::testing {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Eigen::MatrixXcd kron_chain(const std::vector<Eigen::MatrixXcd>& factors) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

inline Eigen::Matrix2cd pauli(char p) {
  Eigen::Matrix2cd m;
  const std::complex<double> i(0, 1);
  switch (p) {
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, -i, i, 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      m.setIdentity();
  }
  return m;
}

inline Eigen::Matrix2cd base_matrix(const GateOp& op) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  switch (op.kind) {
    case GateKind::kH:
      m << r, r, r, -r;
      return m;
    case GateKind::kX:
      return pauli('X');
    case GateKind::kRy:
      // exp(-i theta Y / 2)
      return std::cos(op.angle / 2) * pauli('I') -
             std::complex<double>(0, 1) * std::sin(op.angle / 2) * pauli('Y');
    case GateKind::kPhase:
      m << 1, 0, 0, std::exp(std::complex<double>(0, op.angle));
      return m;
    default:
      throw std::invalid_argument("not a single-qubit kind");
  }
}

/// Full matrix of the uncontrolled part of the op.
inline Eigen::MatrixXcd uncontrolled_full(const GateOp& op, unsigned n) {
  std::vector<Eigen::MatrixXcd> f(n, Eigen::MatrixXcd::Identity(2, 2));
  if (op.kind == GateKind::kSwap) {
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
    for (char p : {'I', 'X', 'Y', 'Z'}) {
      auto g = f;
      g[op.targets[0]] = pauli(p);
      g[op.targets[1]] = pauli(p);
      total += 0.5 * kron_chain(g);
    }
    return total;
  }
  if (op.kind == GateKind::kDiagonal || op.kind == GateKind::kUnitary) {
    for (std::size_t j = 1; j < op.targets.size(); ++j) {
      if (op.targets[j] != op.targets[0] + j) {
        throw std::invalid_argument("oracle supports contiguous block targets only");
      }
    }
    Eigen::MatrixXcd block;
    if (op.kind == GateKind::kUnitary) {
      block = *op.matrix;
    } else {
      block = Eigen::MatrixXcd::Zero(op.diagonal.size(), op.diagonal.size());
      for (std::size_t l = 0; l < op.diagonal.size(); ++l) block(l, l) = op.diagonal[l];
    }
    std::vector<Eigen::MatrixXcd> g;
    for (unsigned q = 0; q < op.targets[0]; ++q) g.push_back(Eigen::MatrixXcd::Identity(2, 2));
    g.push_back(block);
    for (unsigned q = op.targets.back() + 1; q < n; ++q) g.push_back(Eigen::MatrixXcd::Identity(2, 2));
    return kron_chain(g);
  }
  f[op.targets[0]] = base_matrix(op);
  return kron_chain(f);
}

inline Eigen::MatrixXcd full_matrix(const GateOp& op, unsigned n) {
  const Eigen::MatrixXcd u = uncontrolled_full(op, n);
  if (op.controls.empty()) return u;
  std::vector<Eigen::MatrixXcd> f(n, Eigen::MatrixXcd::Identity(2, 2));
  for (const auto& c : op.controls) {
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(2, 2);
    proj(c.on_one ? 1 : 0, c.on_one ? 1 : 0) = 1.0;
    f[c.qubit] = proj;
  }
  const Eigen::MatrixXcd p = kron_chain(f);
  const auto dim = p.rows();
  return (Eigen::MatrixXcd::Identity(dim, dim) - p) + p * u;
}

inline Eigen::MatrixXcd program_matrix(const CircuitProgram& program) {
  const unsigned n = program.n_qubits();
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(1 << n, 1 << n);
  for (const auto& op : program.ops()) total = full_matrix(op, n) * total;
  return total;
}

inline Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
}

/// Random program over all gate kinds; block gates use contiguous targets.
inline CircuitProgram random_program(unsigned n, std::size_t gates, std::mt19937_64& rng) {
  CircuitProgram p(n);
  std::uniform_int_distribution<int> kind_dist(0, 7);
  std::uniform_real_distribution<double> angle(-3.2, 3.2);
  auto pick = [&](std::vector<unsigned>& used) {
    std::uniform_int_distribution<unsigned> q(0, n - 1);
    for (;;) {
      unsigned c = q(rng);
      bool clash = false;
      for (unsigned u : used) clash |= (u == c);
      if (!clash) {
        used.push_back(c);
        return c;
      }
    }
  };
  while (p.size() < gates) {
    std::vector<unsigned> used;
    GateOp op;
    const int k = kind_dist(rng);
    if (k <= 3) {
      const unsigned t = pick(used);
      op = k == 0 ? gate_h(t) : k == 1 ? gate_x(t) : k == 2 ? gate_ry(t, angle(rng)) : gate_phase(t, angle(rng));
    } else if (k == 4) {
      if (n < 2) continue;
      const unsigned a = pick(used);
      const unsigned b = pick(used);
      op = gate_swap(a, b);
    } else {
      const unsigned width = std::min<unsigned>(n, 1 + static_cast<unsigned>(rng() % 2));
      const unsigned start = static_cast<unsigned>(rng() % (n - width + 1));
      std::vector<unsigned> t;
      for (unsigned j = 0; j < width; ++j) {
        t.push_back(start + j);
        used.push_back(start + j);
      }
      if (k == 5) {
        std::vector<Complex> d;
        for (unsigned l = 0; l < (1u << width); ++l) d.push_back(std::polar(1.0, angle(rng)));
        op = gate_diagonal(t, d);
      } else {
        op = gate_unitary(t, random_unitary(1 << width, rng));
      }
    }
    const unsigned max_controls = std::min<unsigned>(2, n - static_cast<unsigned>(used.size()));
    const unsigned nc = max_controls == 0 ? 0 : static_cast<unsigned>(rng() % (max_controls + 1));
    for (unsigned c = 0; c < nc; ++c) op.controlled_by(pick(used), (rng() & 1u) != 0);
    p.append(op);
  }
  return p;
}

}  // namespace qflow::testing
