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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qflow {

using Complex = std::complex<double>;

/// Dense amplitude vector of an n-qubit register.
///
/// Qubit 0 is the most significant bit of the basis index, so a gate on
/// qubit q pairs index i with i + 2^(n-q-1).
class AmplitudeState {
 public:
  AmplitudeState() = default;
  /// |0...0>.
  explicit AmplitudeState(unsigned n_qubits);
  static AmplitudeState basis(unsigned n_qubits, std::uint64_t index);
  /// Takes the amplitudes as given; length must be a power of two.
  static AmplitudeState from_amplitudes(std::vector<Complex> amplitudes);
  static AmplitudeState from_real(const std::vector<double>& values);

  unsigned n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }

  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::span<Complex> amplitudes() { return amps_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::vector<Complex>& raw() { return amps_; }
  const std::vector<Complex>& raw() const { return amps_; }

  double norm() const;
  double norm_squared() const;
  /// Scales to unit norm; throws PostSelectionError for the zero vector.
  void normalize();

  /// Bit value of qubit q inside basis index i.
  static unsigned bit(std::uint64_t i, unsigned q, unsigned n_qubits) {
    return static_cast<unsigned>((i >> (n_qubits - 1 - q)) & 1u);
  }

 private:
  unsigned n_qubits_ = 0;
  std::vector<Complex> amps_;
};

}  // namespace qflow
