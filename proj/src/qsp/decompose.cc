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

#include "qflow/qsp/decompose.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qflow {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4;

std::vector<unsigned> without(const std::vector<unsigned>& pool, const std::vector<unsigned>& used) {
  std::vector<unsigned> out;
  for (unsigned q : pool) {
    if (std::find(used.begin(), used.end(), q) == used.end() &&
        std::find(out.begin(), out.end(), q) == out.end()) {
      out.push_back(q);
    }
  }
  return out;
}

// Dirty-ancilla chain: m controls, m-2 borrowed qubits, 4(m-2) Toffolis.
void mcx_dirty_chain(CircuitProgram& p, const std::vector<unsigned>& x,
                     const std::vector<unsigned>& a, unsigned t) {
  const int m = static_cast<int>(x.size());
  auto tgt = [&](int j) { return j == m - 2 ? t : a[static_cast<std::size_t>(j)]; };
  auto u = [&](int j) {
    if (j == 0) {
      append_toffoli(p, x[0], x[1], tgt(0));
    } else {
      append_toffoli(p, tgt(j - 1), x[static_cast<std::size_t>(j + 1)], tgt(j));
    }
  };
  for (int j = m - 2; j >= 0; --j) u(j);
  for (int j = 1; j <= m - 2; ++j) u(j);
  for (int j = m - 3; j >= 0; --j) u(j);
  for (int j = 1; j <= m - 3; ++j) u(j);
}

// Relative-phase AND of the controls into `out`, using clean scratch s.
CircuitProgram relative_and(unsigned n, const std::vector<unsigned>& x,
                            const std::vector<unsigned>& s, unsigned out) {
  CircuitProgram c(n);
  const std::size_t m = x.size();
  auto tgt = [&](std::size_t j) { return j == m - 2 ? out : s[j]; };
  append_relative_toffoli(c, x[0], x[1], tgt(0));
  for (std::size_t j = 1; j + 1 < m; ++j) append_relative_toffoli(c, tgt(j - 1), x[j + 1], tgt(j));
  return c;
}

void mcx_positive(CircuitProgram& p, const std::vector<unsigned>& x, unsigned t,
                  const std::vector<unsigned>& clean_in, const std::vector<unsigned>& dirty_in) {
  const std::size_t m = x.size();
  if (m == 0) {
    p.append(gate_x(t));
    return;
  }
  if (m == 1) {
    p.append(gate_cnot(x[0], t));
    return;
  }
  if (m == 2) {
    append_toffoli(p, x[0], x[1], t);
    return;
  }
  std::vector<unsigned> used = x;
  used.push_back(t);
  const auto clean = without(clean_in, used);
  const auto dirty = without(dirty_in, used);
  if (clean.size() >= m - 2) {
    std::vector<unsigned> head(x.begin(), x.end() - 1);
    std::vector<unsigned> s(clean.begin(), clean.begin() + static_cast<long>(m - 2));
    std::vector<unsigned> chain_s(s.begin(), s.end() - 1);
    const auto comp = relative_and(p.n_qubits(), head, chain_s, s.back());
    p.append_at(comp, 0);
    append_toffoli(p, s.back(), x.back(), t);
    p.append_at(comp.inverse(), 0);
    return;
  }
  std::vector<unsigned> pool = clean;
  pool.insert(pool.end(), dirty.begin(), dirty.end());
  if (pool.size() >= m - 2) {
    mcx_dirty_chain(p, x, std::vector<unsigned>(pool.begin(), pool.begin() + static_cast<long>(m - 2)), t);
    return;
  }
  if (pool.empty()) throw std::invalid_argument("multi-controlled X needs at least one spare qubit");
  const unsigned a = pool[0];
  const bool a_clean = !clean.empty();
  const std::size_t m1 = (m + 1) / 2;
  std::vector<unsigned> ga(x.begin(), x.begin() + static_cast<long>(m1));
  std::vector<unsigned> gb(x.begin() + static_cast<long>(m1), x.end());
  std::vector<unsigned> rest(pool.begin() + 1, pool.end());
  std::vector<unsigned> dirty_a = gb;
  dirty_a.push_back(t);
  dirty_a.insert(dirty_a.end(), rest.begin(), rest.end());
  std::vector<unsigned> gb_a = gb;
  gb_a.push_back(a);
  std::vector<unsigned> dirty_b = ga;
  dirty_b.insert(dirty_b.end(), rest.begin(), rest.end());
  mcx_positive(p, ga, a, {}, dirty_a);
  mcx_positive(p, gb_a, t, {}, dirty_b);
  mcx_positive(p, ga, a, {}, dirty_a);
  if (!a_clean) mcx_positive(p, gb_a, t, {}, dirty_b);
}

void mcry_positive(CircuitProgram& p, const std::vector<unsigned>& x, unsigned t, double theta,
                   const std::vector<unsigned>& clean_in, const std::vector<unsigned>& dirty_in) {
  const std::size_t m = x.size();
  if (m == 0) {
    p.append(gate_ry(t, theta));
    return;
  }
  if (m == 1) {
    append_cry(p, x[0], t, theta);
    return;
  }
  std::vector<unsigned> used = x;
  used.push_back(t);
  const auto clean = without(clean_in, used);
  const auto dirty = without(dirty_in, used);
  if (!clean.empty()) {
    const unsigned anc = clean[0];
    std::vector<unsigned> rest(clean.begin() + 1, clean.end());
    CircuitProgram comp(p.n_qubits());
    if (rest.size() >= m - 2) {
      comp = relative_and(p.n_qubits(), x, rest, anc);
    } else {
      std::vector<unsigned> d = dirty;
      d.push_back(t);
      mcx_positive(comp, x, anc, rest, d);
    }
    p.append_at(comp, 0);
    append_cry(p, anc, t, theta);
    p.append_at(comp.inverse(), 0);
    return;
  }
  p.append(gate_ry(t, theta / 2));
  mcx_positive(p, x, t, {}, dirty);
  p.append(gate_ry(t, -theta / 2));
  mcx_positive(p, x, t, {}, dirty);
}

template <typename Body>
void with_polarity(CircuitProgram& p, const std::vector<Control>& controls, Body body) {
  std::vector<unsigned> x;
  for (const auto& c : controls) {
    x.push_back(c.qubit);
    if (!c.on_one) p.append(gate_x(c.qubit));
  }
  body(x);
  for (const auto& c : controls) {
    if (!c.on_one) p.append(gate_x(c.qubit));
  }
}

}  // namespace

void append_toffoli(CircuitProgram& p, unsigned c1, unsigned c2, unsigned t) {
  p.append(gate_h(t));
  p.append(gate_cnot(c2, t));
  p.append(gate_phase(t, -kQuarterPi));
  p.append(gate_cnot(c1, t));
  p.append(gate_phase(t, kQuarterPi));
  p.append(gate_cnot(c2, t));
  p.append(gate_phase(t, -kQuarterPi));
  p.append(gate_cnot(c1, t));
  p.append(gate_phase(c2, kQuarterPi));
  p.append(gate_phase(t, kQuarterPi));
  p.append(gate_h(t));
  p.append(gate_cnot(c1, c2));
  p.append(gate_phase(c1, kQuarterPi));
  p.append(gate_phase(c2, -kQuarterPi));
  p.append(gate_cnot(c1, c2));
}

void append_relative_toffoli(CircuitProgram& p, unsigned c1, unsigned c2, unsigned t) {
  p.append(gate_ry(t, kQuarterPi));
  p.append(gate_cnot(c2, t));
  p.append(gate_ry(t, kQuarterPi));
  p.append(gate_cnot(c1, t));
  p.append(gate_ry(t, -kQuarterPi));
  p.append(gate_cnot(c2, t));
  p.append(gate_ry(t, -kQuarterPi));
}

void append_cry(CircuitProgram& p, unsigned control, unsigned target, double theta) {
  p.append(gate_ry(target, theta / 2));
  p.append(gate_cnot(control, target));
  p.append(gate_ry(target, -theta / 2));
  p.append(gate_cnot(control, target));
}

void append_mcx(CircuitProgram& p, const std::vector<Control>& controls, unsigned target,
                const Scratch& scratch) {
  with_polarity(p, controls, [&](const std::vector<unsigned>& x) {
    mcx_positive(p, x, target, scratch.clean, scratch.dirty);
  });
}

void append_mcry(CircuitProgram& p, const std::vector<Control>& controls, unsigned target,
                 double theta, const Scratch& scratch) {
  with_polarity(p, controls, [&](const std::vector<unsigned>& x) {
    mcry_positive(p, x, target, theta, scratch.clean, scratch.dirty);
  });
}

void append_uniformly_controlled_ry(CircuitProgram& p, const std::vector<unsigned>& controls,
                                    unsigned target, const std::vector<double>& angles) {
  const std::size_t k = controls.size();
  const std::size_t count = std::size_t{1} << k;
  if (angles.size() != count) throw std::invalid_argument("need 2^k angles for k controls");
  const bool zero = std::all_of(angles.begin(), angles.end(), [](double a) { return std::abs(a) < 1e-14; });
  if (zero) return;
  const bool constant = std::all_of(angles.begin(), angles.end(),
                                    [&](double a) { return std::abs(a - angles[0]) < 1e-14; });
  if (constant) {
    p.append(gate_ry(target, angles[0]));
    return;
  }
  // Walsh-Hadamard transform: w[s] = sum_x (-1)^{popcount(x & s)} angles[x].
  std::vector<double> w = angles;
  for (std::size_t len = 1; len < count; len <<= 1) {
    for (std::size_t i = 0; i < count; i += 2 * len) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = w[j], b = w[j + len];
        w[j] = a + b;
        w[j + len] = a - b;
      }
    }
  }
  auto gray = [](std::size_t i) { return i ^ (i >> 1); };
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = w[gray(i)] / static_cast<double>(count);
    if (std::abs(theta) > 1e-15) p.append(gate_ry(target, theta));
    const std::size_t flip = gray(i) ^ gray((i + 1) % count);
    const auto b = static_cast<std::size_t>(std::countr_zero(flip));
    p.append(gate_cnot(controls[k - 1 - b], target));
  }
}

}  // namespace qflow
