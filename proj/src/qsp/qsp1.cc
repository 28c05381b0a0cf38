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

#include "qflow/qsp/qsp1.h"

#include <cmath>
#include <stdexcept>

#include "qflow/qsp/decompose.h"

namespace qflow {

ProbabilityTree build_probability_tree(const std::vector<double>& amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("amplitude vector length must be a power of two");
  }
  unsigned n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  double total = 0.0;
  for (double a : amplitudes) total += a * a;
  if (!(total > 0.0)) throw std::invalid_argument("cannot build a probability tree of a zero vector");
  ProbabilityTree tree;
  tree.levels.resize(n + 1);
  auto& leaves = tree.levels[n];
  leaves.resize(size);
  for (std::size_t i = 0; i < size; ++i) leaves[i] = amplitudes[i] * amplitudes[i] / total;
  for (unsigned l = n; l-- > 0;) {
    const auto& child = tree.levels[l + 1];
    auto& level = tree.levels[l];
    level.resize(child.size() / 2);
    for (std::size_t i = 0; i < level.size(); ++i) level[i] = child[2 * i] + child[2 * i + 1];
  }
  return tree;
}

double qsp1_angle(double parent, double zero_child) {
  if (parent < 0.0 || zero_child < 0.0) throw std::invalid_argument("probabilities must be nonnegative");
  if (parent == 0.0) {
    if (zero_child != 0.0) throw std::invalid_argument("empty parent with a nonzero child");
    return 0.0;
  }
  if (zero_child > parent * (1 + 1e-12)) throw std::invalid_argument("child exceeds parent");
  const double f = std::min(1.0, zero_child / parent);
  return 2.0 * std::acos(std::sqrt(f));
}

std::vector<CircuitProgram> qsp1_levels(const std::vector<double>& target, unsigned n) {
  if (target.size() != (std::size_t{1} << n)) throw std::invalid_argument("target length must be 2^n");
  for (double v : target) {
    if (v < 0.0) throw std::invalid_argument("qsp1 targets must be nonnegative");
  }
  const auto tree = build_probability_tree(target);
  std::vector<CircuitProgram> levels;
  for (unsigned l = 0; l < n; ++l) {
    CircuitProgram level(n);
    const auto& parent = tree.levels[l];
    const auto& child = tree.levels[l + 1];
    std::vector<double> angles(parent.size());
    for (std::size_t i = 0; i < parent.size(); ++i) {
      // Rounding can leave a child a hair above its parent.
      angles[i] = parent[i] <= 1e-300 ? 0.0 : qsp1_angle(parent[i], std::min(child[2 * i], parent[i]));
    }
    std::vector<unsigned> controls(l);
    for (unsigned c = 0; c < l; ++c) controls[c] = c;
    append_uniformly_controlled_ry(level, controls, l, angles);
    levels.push_back(std::move(level));
  }
  return levels;
}

CircuitProgram qsp1_synthesize(const std::vector<double>& target, unsigned n) {
  CircuitProgram p(n);
  for (const auto& level : qsp1_levels(target, n)) p.append_at(level, 0);
  return p;
}

CircuitProgram prepare_real_state(const std::vector<double>& target, unsigned n) {
  std::vector<double> magnitude(target.size());
  std::vector<Complex> sign(target.size());
  bool negative = false;
  for (std::size_t i = 0; i < target.size(); ++i) {
    magnitude[i] = std::abs(target[i]);
    sign[i] = target[i] < 0 ? -1.0 : 1.0;
    negative = negative || target[i] < 0;
  }
  CircuitProgram p = qsp1_synthesize(magnitude, n);
  if (negative) {
    std::vector<unsigned> all(n);
    for (unsigned q = 0; q < n; ++q) all[q] = q;
    p.append(gate_diagonal(all, sign));
  }
  return p;
}

}  // namespace qflow
