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

#include "qflow/qlsa/lcu.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "qflow/core/errors.h"
#include "qflow/core/simulator.h"
#include "qflow/qsp/qsp1.h"

namespace qflow {

namespace {

unsigned ceil_log2(std::size_t n) {
  unsigned s = 0;
  while ((std::size_t{1} << s) < n) ++s;
  return s;
}

void check_terms(const LcuDecomposition& terms) {
  if (terms.empty()) throw std::invalid_argument("empty LCU decomposition");
  double sum = 0.0;
  const auto dim = terms.front().unitary.rows();
  for (const auto& t : terms) {
    if (t.beta < 0.0) throw std::invalid_argument("LCU weights must be nonnegative");
    if (t.unitary.rows() != dim || t.unitary.cols() != dim) throw std::invalid_argument("LCU unitaries differ in size");
    sum += t.beta;
  }
  if (!(sum > 0.0)) throw std::invalid_argument("all-zero LCU decomposition");
}

}  // namespace

Eigen::MatrixXcd cyclic_shift(int dim, int offset) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) s(i, ((i + offset) % dim + dim) % dim) = 1.0;
  return s;
}

Eigen::MatrixXcd lcu_matrix(const LcuDecomposition& terms) {
  check_terms(terms);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(terms.front().unitary.rows(), terms.front().unitary.cols());
  for (const auto& t : terms) m += t.beta * t.unitary;
  return m;
}

CircuitProgram lcu_program(const LcuDecomposition& terms, unsigned system_qubits) {
  check_terms(terms);
  const auto dim = terms.front().unitary.rows();
  if (dim != (Eigen::Index{1} << system_qubits)) throw std::invalid_argument("unitary size does not match the register");
  const unsigned l = ceil_log2(terms.size());
  const unsigned n = l + system_qubits;
  CircuitProgram p(n);
  std::vector<double> root(std::size_t{1} << l, 0.0);
  for (std::size_t i = 0; i < terms.size(); ++i) root[i] = std::sqrt(terms[i].beta);
  CircuitProgram prep(l);
  if (l > 0) prep = qsp1_synthesize(root, l);
  p.append_at(prep, 0);
  std::vector<unsigned> sys(system_qubits);
  for (unsigned q = 0; q < system_qubits; ++q) sys[q] = l + q;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].beta == 0.0) continue;
    GateOp op = gate_unitary(sys, terms[i].unitary);
    std::vector<Control> pattern(l);
    for (unsigned b = 0; b < l; ++b) pattern[b] = {b, ((i >> (l - 1 - b)) & 1u) != 0};
    op.controlled_by(pattern);
    p.append(std::move(op));
  }
  p.append_at(prep.inverse(), 0);
  return p;
}

LcuResult lcu_apply(const LcuDecomposition& terms, const AmplitudeState& state) {
  check_terms(terms);
  const unsigned s = state.n_qubits();
  const CircuitProgram p = lcu_program(terms, s);
  const unsigned l = p.n_qubits() - s;
  std::vector<Complex> amps(std::size_t{1} << p.n_qubits(), 0.0);
  for (std::size_t i = 0; i < state.size(); ++i) amps[i] = state[i];
  AmplitudeState full = AmplitudeState::from_amplitudes(std::move(amps));
  apply_program(full, p);
  std::vector<Control> pattern(l);
  for (unsigned b = 0; b < l; ++b) pattern[b] = {b, false};
  LcuResult r;
  r.beta_sum = 0.0;
  for (const auto& t : terms) r.beta_sum += t.beta;
  const double in_norm2 = state.norm_squared();
  r.success_probability = project_pattern(full, pattern, 1e-24 * in_norm2) / in_norm2;
  std::vector<Complex> out(state.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = full[i];
  r.state = AmplitudeState::from_amplitudes(std::move(out));
  r.state.normalize();
  return r;
}

LcuDecomposition banded_decomposition(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw std::invalid_argument("matrix must be square");
  const int n = static_cast<int>(a.rows());
  const int np = 1 << ceil_log2(static_cast<std::size_t>(n));
  const int dim = 2 * np;
  LcuDecomposition terms;
  for (int o = -(n - 1); o <= n - 1; ++o) {
    // Row classes: value rows (inside A), rows whose product is discarded
    // (don't care), and rows N..N'-1 that must stay zero.
    std::vector<double> v(static_cast<std::size_t>(dim), 0.0);
    std::vector<bool> care(static_cast<std::size_t>(dim), false);
    bool any = false;
    for (int i = 0; i < np; ++i) {
      const int col = ((i + o) % dim + dim) % dim;
      if (i < n && col < n) {
        v[static_cast<std::size_t>(i)] = a(i, col);
        care[static_cast<std::size_t>(i)] = true;
        any = any || a(i, col) != 0.0;
      } else if (i >= n && col < n) {
        care[static_cast<std::size_t>(i)] = true;
      }
    }
    if (!any) continue;
    double c = 0.0, vmax = 0.0;
    bool first = true, constant = true;
    for (int i = 0; i < dim; ++i) {
      if (!care[static_cast<std::size_t>(i)]) continue;
      const double x = v[static_cast<std::size_t>(i)];
      vmax = std::max(vmax, std::abs(x));
      if (first) {
        c = x;
        first = false;
      } else if (x != c) {
        constant = false;
      }
    }
    const Eigen::MatrixXcd shift = cyclic_shift(dim, o);
    if (constant) {
      terms.push_back({std::abs(c), (c < 0 ? -1.0 : 1.0) * shift});
      continue;
    }
    Eigen::VectorXcd plus(dim), minus(dim);
    for (int i = 0; i < dim; ++i) {
      const double phi = std::acos(std::clamp(v[static_cast<std::size_t>(i)] / vmax, -1.0, 1.0));
      plus[i] = std::polar(1.0, phi);
      minus[i] = std::polar(1.0, -phi);
    }
    terms.push_back({vmax / 2, plus.asDiagonal() * shift});
    terms.push_back({vmax / 2, minus.asDiagonal() * shift});
  }
  if (terms.empty()) throw std::invalid_argument("zero matrix has no LCU decomposition");
  return terms;
}

LcuDecomposition central_difference_decomposition(int n, double h) {
  if (n < 2 || !(h > 0.0)) throw std::invalid_argument("central difference needs n >= 2 and h > 0");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n) d(i, i + 1) = 0.5 / h;
    if (i > 0) d(i, i - 1) = -0.5 / h;
  }
  return banded_decomposition(d);
}

LcuDecomposition periodic_central_difference(unsigned qubits, double h) {
  if (qubits < 1 || !(h > 0.0)) throw std::invalid_argument("periodic difference needs qubits >= 1 and h > 0");
  const int dim = 1 << qubits;
  return {{0.5 / h, cyclic_shift(dim, 1)}, {0.5 / h, -cyclic_shift(dim, -1)}};
}

LcuDecomposition pauli_decomposition(const Eigen::MatrixXcd& a) {
  const auto dim = static_cast<std::size_t>(a.rows());
  if (a.rows() != a.cols() || dim == 0 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("Pauli decomposition needs a 2^k x 2^k matrix");
  }
  const unsigned k = ceil_log2(dim);
  std::array<Eigen::Matrix2cd, 4> pauli;
  pauli[0] << 1, 0, 0, 1;
  pauli[1] << 0, 1, 1, 0;
  pauli[2] << 0, Complex(0, -1), Complex(0, 1), 0;
  pauli[3] << 1, 0, 0, -1;
  LcuDecomposition terms;
  const std::size_t count = std::size_t{1} << (2 * k);
  for (std::size_t code = 0; code < count; ++code) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(1, 1);
    for (unsigned q = 0; q < k; ++q) {
      const auto& s = pauli[(code >> (2 * (k - 1 - q))) & 3u];
      Eigen::MatrixXcd next(p.rows() * 2, p.cols() * 2);
      for (Eigen::Index r = 0; r < p.rows(); ++r)
        for (Eigen::Index c = 0; c < p.cols(); ++c) next.block<2, 2>(2 * r, 2 * c) = p(r, c) * s;
      p = next;
    }
    const Complex coeff = (p.adjoint() * a).trace() / static_cast<double>(dim);
    if (std::abs(coeff) < 1e-14) continue;
    terms.push_back({std::abs(coeff), (coeff / std::abs(coeff)) * p});
  }
  if (terms.empty()) throw std::invalid_argument("zero matrix has no LCU decomposition");
  return terms;
}

}  // namespace qflow
