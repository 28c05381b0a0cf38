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

#include "qflow/core/simulator.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qflow/core/errors.h"
#include "qflow/core/parallel.h"

namespace qflow {

namespace {

using Index = std::uint64_t;

constexpr long long kParallelThreshold = 1 << 13;

// Enumerates the basis indices of a gate: every combination of the free
// bits, with the fixed bits (targets and controls) inserted as zeros and the
// |1>-polarity controls then set.
class IndexPattern {
 public:
  IndexPattern(unsigned n_qubits, const std::vector<unsigned>& targets,
               const std::vector<Control>& controls)
      : n_(n_qubits) {
    for (unsigned q : targets) positions_.push_back(n_ - 1 - q);
    for (const auto& c : controls) {
      positions_.push_back(n_ - 1 - c.qubit);
      if (c.on_one) set_mask_ |= Index{1} << (n_ - 1 - c.qubit);
    }
    std::sort(positions_.begin(), positions_.end());
    combos_ = static_cast<long long>(Index{1} << (n_ - positions_.size()));
    const std::size_t k = targets.size();
    offsets_.assign(std::size_t{1} << k, 0);
    for (std::size_t l = 0; l < offsets_.size(); ++l) {
      Index off = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if ((l >> (k - 1 - j)) & 1u) off |= Index{1} << (n_ - 1 - targets[j]);
      }
      offsets_[l] = off;
    }
  }

  long long combos() const { return combos_; }
  const std::vector<Index>& offsets() const { return offsets_; }

  Index base(Index f) const {
    for (unsigned p : positions_) {
      const Index low = f & ((Index{1} << p) - 1);
      f = ((f >> p) << (p + 1)) | low;
    }
    return f | set_mask_;
  }

 private:
  unsigned n_;
  std::vector<unsigned> positions_;
  Index set_mask_ = 0;
  long long combos_ = 0;
  std::vector<Index> offsets_;
};

void apply_single(std::vector<Complex>& a, const IndexPattern& pat, const GateOp& op) {
  const Index t = pat.offsets()[1];
  const long long combos = pat.combos();
  Complex* amp = a.data();
  switch (op.kind) {
    case GateKind::kX: {
#pragma omp parallel for schedule(static) if (combos >= kParallelThreshold)
      for (long long f = 0; f < combos; ++f) {
        const Index i0 = pat.base(static_cast<Index>(f));
        std::swap(amp[i0], amp[i0 | t]);
      }
      break;
    }
    case GateKind::kPhase: {
      const Complex ph = std::polar(1.0, op.angle);
#pragma omp parallel for schedule(static) if (combos >= kParallelThreshold)
      for (long long f = 0; f < combos; ++f) {
        const Index i0 = pat.base(static_cast<Index>(f));
        amp[i0 | t] *= ph;
      }
      break;
    }
    default: {
      const Eigen::Matrix2cd m = single_qubit_matrix(op);
      const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
#pragma omp parallel for schedule(static) if (combos >= kParallelThreshold)
      for (long long f = 0; f < combos; ++f) {
        const Index i0 = pat.base(static_cast<Index>(f));
        const Index i1 = i0 | t;
        const Complex a0 = amp[i0], a1 = amp[i1];
        amp[i0] = m00 * a0 + m01 * a1;
        amp[i1] = m10 * a0 + m11 * a1;
      }
      break;
    }
  }
}

void apply_swap(std::vector<Complex>& a, const IndexPattern& pat) {
  const Index b01 = pat.offsets()[1], b10 = pat.offsets()[2];
  const long long combos = pat.combos();
  Complex* amp = a.data();
#pragma omp parallel for schedule(static) if (combos >= kParallelThreshold)
  for (long long f = 0; f < combos; ++f) {
    const Index base = pat.base(static_cast<Index>(f));
    std::swap(amp[base | b01], amp[base | b10]);
  }
}

void apply_diagonal(std::vector<Complex>& a, const IndexPattern& pat, const GateOp& op) {
  const auto& off = pat.offsets();
  const long long combos = pat.combos();
  Complex* amp = a.data();
  const Complex* d = op.diagonal.data();
  const std::size_t k = off.size();
#pragma omp parallel for schedule(static) if (combos * static_cast<long long>(k) >= kParallelThreshold)
  for (long long f = 0; f < combos; ++f) {
    const Index base = pat.base(static_cast<Index>(f));
    for (std::size_t l = 0; l < k; ++l) amp[base | off[l]] *= d[l];
  }
}

void apply_unitary(std::vector<Complex>& a, const IndexPattern& pat, const GateOp& op) {
  const auto& off = pat.offsets();
  const long long combos = pat.combos();
  const auto dim = static_cast<Eigen::Index>(off.size());
  const Eigen::MatrixXcd& m = *op.matrix;
  Complex* amp = a.data();
  const long long work = combos * dim * dim;
#pragma omp parallel if (work >= kParallelThreshold)
  {
    Eigen::VectorXcd in(dim), out(dim);
#pragma omp for schedule(static)
    for (long long f = 0; f < combos; ++f) {
      const Index base = pat.base(static_cast<Index>(f));
      for (Eigen::Index l = 0; l < dim; ++l) in[l] = amp[base | off[static_cast<std::size_t>(l)]];
      out.noalias() = m * in;
      for (Eigen::Index l = 0; l < dim; ++l) amp[base | off[static_cast<std::size_t>(l)]] = out[l];
    }
  }
}

Index pattern_mask(const std::vector<Control>& pattern, unsigned n, Index* value) {
  Index mask = 0;
  *value = 0;
  for (const auto& c : pattern) {
    if (c.qubit >= n) throw std::invalid_argument("qubit index out of range");
    const Index b = Index{1} << (n - 1 - c.qubit);
    mask |= b;
    if (c.on_one) *value |= b;
  }
  return mask;
}

}  // namespace

void apply_gate(AmplitudeState& state, const GateOp& op) {
  validate_gate(op, state.n_qubits());
  const IndexPattern pat(state.n_qubits(), op.targets, op.controls);
  auto& a = state.raw();
  switch (op.kind) {
    case GateKind::kSwap:
      apply_swap(a, pat);
      break;
    case GateKind::kDiagonal:
      apply_diagonal(a, pat, op);
      break;
    case GateKind::kUnitary:
      apply_unitary(a, pat, op);
      break;
    default:
      apply_single(a, pat, op);
      break;
  }
}

void apply_program(AmplitudeState& state, const CircuitProgram& program) {
  if (program.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("program and state register widths differ");
  }
  for (const auto& op : program.ops()) apply_gate(state, op);
}

AmplitudeState run_program(const CircuitProgram& program) {
  AmplitudeState s(program.n_qubits());
  apply_program(s, program);
  return s;
}

double pattern_probability(const AmplitudeState& state, const std::vector<Control>& pattern) {
  Index value = 0;
  const Index mask = pattern_mask(pattern, state.n_qubits(), &value);
  const Complex* a = state.raw().data();
  return deterministic_sum(state.size(), [a, mask, value](std::size_t i) {
    return (static_cast<Index>(i) & mask) == value ? std::norm(a[i]) : 0.0;
  });
}

double project_pattern(AmplitudeState& state, const std::vector<Control>& pattern,
                       double min_probability) {
  const double p = pattern_probability(state, pattern);
  if (!(p > min_probability)) {
    throw PostSelectionError("post-selection failed: branch probability " + std::to_string(p));
  }
  Index value = 0;
  const Index mask = pattern_mask(pattern, state.n_qubits(), &value);
  const double scale = 1.0 / std::sqrt(p);
  auto& a = state.raw();
  const auto n = static_cast<long long>(a.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (long long i = 0; i < n; ++i) {
    if ((static_cast<Index>(i) & mask) == value) {
      a[static_cast<std::size_t>(i)] *= scale;
    } else {
      a[static_cast<std::size_t>(i)] = 0.0;
    }
  }
  return p;
}

double project_and_renormalize(AmplitudeState& state, unsigned qubit, int outcome,
                               double min_probability) {
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
  return project_pattern(state, {{qubit, outcome == 1}}, min_probability);
}

std::map<std::string, std::size_t> sample_measurements(const AmplitudeState& state,
                                                       std::size_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
  std::vector<double> cdf(state.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    acc += std::norm(state[i]);
    cdf[i] = acc;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, acc);
  std::vector<std::size_t> counts(state.size(), 0);
  for (std::size_t s = 0; s < shots; ++s) {
    const double r = u(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    if (it == cdf.end()) --it;
    ++counts[static_cast<std::size_t>(it - cdf.begin())];
  }
  std::map<std::string, std::size_t> hist;
  const unsigned n = state.n_qubits();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    std::string key(n, '0');
    for (unsigned q = 0; q < n; ++q) {
      if (AmplitudeState::bit(i, q, n)) key[q] = '1';
    }
    hist[key] = counts[i];
  }
  return hist;
}

}  // namespace qflow
