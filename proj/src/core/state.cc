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

#include "qflow/core/state.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qflow/core/errors.h"
#include "qflow/core/parallel.h"

namespace qflow {

AmplitudeState::AmplitudeState(unsigned n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits > 34) throw std::invalid_argument("register too large for a dense state");
  amps_.assign(std::size_t{1} << n_qubits, Complex(0.0, 0.0));
  amps_[0] = 1.0;
}

AmplitudeState AmplitudeState::basis(unsigned n_qubits, std::uint64_t index) {
  AmplitudeState s(n_qubits);
  if (index >= s.size()) throw std::invalid_argument("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

AmplitudeState AmplitudeState::from_amplitudes(std::vector<Complex> amplitudes) {
  if (amplitudes.empty() || !std::has_single_bit(amplitudes.size())) {
    throw std::invalid_argument("amplitude vector length must be a power of two");
  }
  AmplitudeState s;
  s.n_qubits_ = static_cast<unsigned>(std::countr_zero(amplitudes.size()));
  s.amps_ = std::move(amplitudes);
  return s;
}

AmplitudeState AmplitudeState::from_real(const std::vector<double>& values) {
  std::vector<Complex> a(values.begin(), values.end());
  return from_amplitudes(std::move(a));
}

double AmplitudeState::norm_squared() const {
  const Complex* a = amps_.data();
  return deterministic_sum(amps_.size(), [a](std::size_t i) { return std::norm(a[i]); });
}

double AmplitudeState::norm() const { return std::sqrt(norm_squared()); }

void AmplitudeState::normalize() {
  const double nrm = norm();
  if (!(nrm > 1e-300)) throw PostSelectionError("cannot normalize the zero vector");
  const double inv = 1.0 / nrm;
  for (auto& a : amps_) a *= inv;
}

}  // namespace qflow
