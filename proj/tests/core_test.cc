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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dense_oracle.h"
#include "qflow/core/errors.h"
#include "qflow/core/io.h"
#include "qflow/core/parallel.h"
#include "qflow/core/qft.h"
#include "qflow/core/simulator.h"

namespace qflow {
namespace {

AmplitudeState random_state(unsigned n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> a(std::size_t{1} << n);
  for (auto& x : a) x = Complex(g(rng), g(rng));
  auto s = AmplitudeState::from_amplitudes(std::move(a));
  s.normalize();
  return s;
}

double max_diff(const AmplitudeState& s, const Eigen::VectorXcd& v) {
  double d = 0;
  for (std::size_t i = 0; i < s.size(); ++i) d = std::max(d, std::abs(s[i] - v[static_cast<Eigen::Index>(i)]));
  return d;
}

Eigen::VectorXcd as_vector(const AmplitudeState& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) v[static_cast<Eigen::Index>(i)] = s[i];
  return v;
}

TEST(ApplyGate, HadamardOnSingleQubit) {
  AmplitudeState s(1);
  apply_gate(s, gate_h(0));
  EXPECT_NEAR(s[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s[1].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(ApplyGate, HadamardTensorXMixesPairs) {
  // H (x) X with the Hadamard on the most significant qubit.
  const std::vector<double> u = {0.1, 0.7, -0.3, 0.5};
  auto s = AmplitudeState::from_real(u);
  apply_gate(s, gate_h(0));
  apply_gate(s, gate_x(1));
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(s[0].real(), (u[1] + u[3]) * r, 1e-15);
  EXPECT_NEAR(s[1].real(), (u[0] + u[2]) * r, 1e-15);
  EXPECT_NEAR(s[2].real(), (u[1] - u[3]) * r, 1e-15);
  EXPECT_NEAR(s[3].real(), (u[0] - u[2]) * r, 1e-15);
}

TEST(ApplyGate, PairingLawTouchesOnlyPartnerIndices) {
  // A gate on qubit q of a 4-qubit register pairs i with i + 2^(n-q-1).
  for (unsigned q = 0; q < 4; ++q) {
    std::vector<double> v(16, 0.0);
    v[0] = 1.0;
    auto s = AmplitudeState::from_real(v);
    apply_gate(s, gate_x(q));
    EXPECT_NEAR(std::abs(s[std::size_t{1} << (3 - q)]), 1.0, 1e-15);
  }
}

TEST(ApplyGate, RandomSixQubitCircuitMatchesDenseProduct) {
  std::mt19937_64 rng(7);
  const auto program = testing::random_program(6, 50, rng);
  auto s = random_state(6, rng);
  const Eigen::VectorXcd expect = testing::program_matrix(program) * as_vector(s);
  apply_program(s, program);
  EXPECT_LT(max_diff(s, expect), 1e-10);
  EXPECT_NEAR(s.norm(), 1.0, 1e-10);
}

TEST(ApplyGate, DenseOracleEquivalenceProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned n = 1 + static_cast<unsigned>(rng() % 8);
    const auto program = testing::random_program(n, 1 + rng() % 40, rng);
    auto s = random_state(n, rng);
    const Eigen::VectorXcd expect = testing::program_matrix(program) * as_vector(s);
    apply_program(s, program);
    ASSERT_LT(max_diff(s, expect), 1e-10) << "trial " << trial;
    ASSERT_NEAR(s.norm(), 1.0, 1e-10);
  }
}

TEST(ApplyGate, RejectsBadIndicesAndPayloads) {
  AmplitudeState s(2);
  EXPECT_THROW(apply_gate(s, gate_h(2)), std::invalid_argument);
  EXPECT_THROW(apply_gate(s, gate_cnot(1, 1)), std::invalid_argument);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  m(0, 0) = 2.0;
  EXPECT_THROW(apply_gate(s, gate_unitary({0}, m)), std::invalid_argument);
  EXPECT_THROW(apply_gate(s, gate_diagonal({0}, {1.0, 0.5})), std::invalid_argument);
}

TEST(ApplyGate, ZeroPolarityControl) {
  AmplitudeState s(2);
  apply_gate(s, gate_x(1).controlled_by(0, false));
  EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-15);
}

TEST(Qft, RoundTripIsIdentity) {
  std::mt19937_64 rng(3);
  auto s = random_state(8, rng);
  const auto orig = s;
  qft(s, 0, 8);
  iqft(s, 0, 8);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_LT(std::abs(s[i] - orig[i]), 1e-10);
}

TEST(Qft, DeltaMapsToUniform) {
  AmplitudeState s(5);
  qft(s, 0, 5);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(s[i].real(), std::pow(2.0, -2.5), 1e-12);
    EXPECT_NEAR(s[i].imag(), 0.0, 1e-12);
  }
}

TEST(Qft, BasisOneMatchesDftColumn) {
  auto s = AmplitudeState::basis(3, 1);
  qft(s, 0, 3);
  for (int k = 0; k < 8; ++k) {
    const Complex expect = std::polar(1 / std::sqrt(8.0), 2 * std::numbers::pi * k / 8.0);
    EXPECT_LT(std::abs(s[static_cast<std::size_t>(k)] - expect), 1e-12);
  }
}

TEST(Qft, SubRangeMatchesDftMatrix) {
  // Transform qubits 1..3 of a 5-qubit register against the explicit DFT.
  std::mt19937_64 rng(5);
  auto s = random_state(5, rng);
  const auto orig = s;
  qft(s, 1, 3);
  for (std::size_t hi = 0; hi < 2; ++hi) {
    for (std::size_t lo = 0; lo < 2; ++lo) {
      for (std::size_t k = 0; k < 8; ++k) {
        Complex acc = 0;
        for (std::size_t x = 0; x < 8; ++x) {
          acc += std::polar(1 / std::sqrt(8.0), 2 * std::numbers::pi * double(x * k) / 8.0) *
                 orig[(hi << 4) | (x << 1) | lo];
        }
        EXPECT_LT(std::abs(s[(hi << 4) | (k << 1) | lo] - acc), 1e-12);
      }
    }
  }
  EXPECT_THROW(qft(s, 0, 0), std::invalid_argument);
}

TEST(Projection, EqualSuperpositionOutcomeOne) {
  AmplitudeState s(1);
  apply_gate(s, gate_h(0));
  const double p = project_and_renormalize(s, 0, 1);
  EXPECT_NEAR(p, 0.5, 1e-15);
  EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
}

TEST(Projection, ZeroProbabilityBranchFails) {
  auto s = AmplitudeState::basis(2, 1);  // |01>
  EXPECT_THROW(project_and_renormalize(s, 1, 0), PostSelectionError);
}

TEST(Projection, ProbabilityEqualsDirectSum) {
  std::mt19937_64 rng(99);
  auto s = random_state(4, rng);
  double expect = 0;
  for (std::size_t i = 0; i < 16; ++i) {
    if (((i >> 1) & 1u) == 1) expect += std::norm(s[i]);  // qubit 2
  }
  EXPECT_NEAR(project_and_renormalize(s, 2, 1), expect, 1e-14);
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(Sampling, BasisStateIsDeterministic) {
  auto s = AmplitudeState::basis(1, 1);
  const auto h = sample_measurements(s, 100, 1);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.at("1"), 100u);
}

TEST(Sampling, UniformWithinFiveSigmaAndReproducible) {
  AmplitudeState s(2);
  apply_gate(s, gate_h(0));
  apply_gate(s, gate_h(1));
  const auto h = sample_measurements(s, 8000, 1234);
  const double sigma = std::sqrt(8000 * 0.25 * 0.75);
  std::size_t total = 0;
  for (const auto& [k, c] : h) {
    EXPECT_LT(std::abs(double(c) - 2000.0), 5 * sigma) << k;
    total += c;
  }
  EXPECT_EQ(total, 8000u);
  EXPECT_EQ(h, sample_measurements(s, 8000, 1234));
  EXPECT_THROW(sample_measurements(s, 0, 1), std::invalid_argument);
}

TEST(Stats, EmptyProgram) {
  const auto st = circuit_stats(CircuitProgram(3));
  EXPECT_EQ(st.total, 0u);
  EXPECT_EQ(st.cnot, 0u);
  EXPECT_EQ(st.depth, 0u);
}

TEST(Stats, TwoQubitParallelLayer) {
  CircuitProgram p(2);
  p.append(gate_h(1)).append(gate_x(0));
  const auto st = circuit_stats(p);
  EXPECT_EQ(st.depth, 1u);
  EXPECT_EQ(st.total, 2u);
  EXPECT_EQ(st.cnot, 0u);
}

TEST(Stats, TwentyQubitFourierRoundTripDepth) {
  // H + controlled-phase cascade + closing swaps layers to 2n per transform,
  // so the round trip has depth 4n.
  const unsigned n = 20;
  CircuitProgram p(n);
  p.append_at(qft_program(n, 0, n), 0).append_at(iqft_program(n, 0, n), 0);
  const auto st = circuit_stats(p);
  EXPECT_EQ(st.depth, 4u * n);
  EXPECT_EQ(st.total, 2u * (n * (n + 1) / 2 + n / 2));
  EXPECT_LE(st.depth, st.total);
}

TEST(Stats, CnotCountMatchesOps) {
  CircuitProgram p(3);
  p.append(gate_cnot(0, 1)).append(gate_x(2).controlled_by(0).controlled_by(1)).append(gate_cnot(2, 0));
  const auto st = circuit_stats(p);
  EXPECT_EQ(st.cnot, 2u);
  EXPECT_EQ(st.by_category.at("MCX"), 1u);
}

TEST(Io, CircuitTextRoundTrip) {
  std::mt19937_64 rng(17);
  const auto program = testing::random_program(5, 60, rng);
  const auto back = circuit_from_text(circuit_to_text(program));
  ASSERT_EQ(back.size(), program.size());
  auto a = run_program(program);
  auto b = run_program(back);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-14);
}

TEST(Io, StateCsvRoundTrip) {
  std::mt19937_64 rng(21);
  const auto s = random_state(3, rng);
  std::stringstream ss;
  write_state_csv(ss, s);
  const auto back = read_state_csv(ss);
  ASSERT_EQ(back.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(back[i], s[i]);
}

TEST(Parallel, ThreadCountIndependence) {
  std::mt19937_64 rng(23);
  const auto program = testing::random_program(14, 120, rng);
  set_num_threads(1);
  auto a = run_program(program);
  const double na = a.norm();
  set_num_threads(4);
  auto b = run_program(program);
  const double nb = b.norm();
  set_num_threads(0);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i], b[i]);
  EXPECT_EQ(na, nb);
}

}  // namespace
}  // namespace qflow
