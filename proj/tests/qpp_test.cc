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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dense_oracle.h"
#include "qflow/cfd/systems.h"
#include "qflow/core/errors.h"
#include "qflow/core/simulator.h"
#include "qflow/qpp/derivative.h"
#include "qflow/qpp/dissipation.h"
#include "qflow/qpp/qadc.h"
#include "qflow/qsp/qsp1.h"

namespace qflow {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) {
    x = g(rng);
    s += x * x;
  }
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

AmplitudeState real_state(const Eigen::VectorXd& v) {
  return AmplitudeState::from_real(std::vector<double>(v.data(), v.data() + v.size()));
}

double beta_of(double u) { return std::asin(std::sqrt(0.5 * (1.0 + u * u))) / kPi; }

// Distance on the circle of phase fractions.
double phase_gap(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

TEST(SpectralDerivative, LambdaIsImaginaryWithZeroNyquist) {
  const DerivativeOp op = spectral_derivative(3);
  ASSERT_EQ(op.lambda_diag.size(), 8);
  EXPECT_EQ(op.lambda_diag[4], Complex(0.0, 0.0));
  for (int k = 0; k < 8; ++k) EXPECT_EQ(op.lambda_diag[k].real(), 0.0);
  EXPECT_DOUBLE_EQ(op.lambda_diag[1].imag(), 2 * kPi);
  EXPECT_DOUBLE_EQ(op.lambda_diag[7].imag(), -2 * kPi);
  const Eigen::MatrixXcd m = lcu_matrix(op.decomposition);
  EXPECT_LT((m - Eigen::MatrixXcd(op.lambda_diag.asDiagonal())).norm(), 1e-12);
}

TEST(SpectralDerivative, SineGivesCosine) {
  Eigen::VectorXd u(8);
  for (int j = 0; j < 8; ++j) u[j] = std::sin(2 * kPi * j / 8.0);
  const auto r = quantum_derivative(real_state(u), spectral_derivative(3));
  ASSERT_FALSE(r.zero);
  const Eigen::VectorXd d = r.values(u.norm());
  for (int j = 0; j < 8; ++j) {
    EXPECT_NEAR(d[j], 2 * kPi * std::cos(2 * kPi * j / 8.0), 1e-8);
    EXPECT_NEAR(r.state[static_cast<std::size_t>(j)].imag(), 0.0, 1e-10);
  }
}

TEST(SpectralDerivative, RandomRealDataMatchesDft) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto v = random_unit(16, rng);
    const Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(v.data(), 16);
    const auto r = quantum_derivative(real_state(u), spectral_derivative(4, 2.0));
    const Eigen::VectorXd ref = spectral_derivative_classical(u, 2.0);
    EXPECT_LT((r.values() - ref).norm(), 1e-10);
    for (std::size_t j = 0; j < 16; ++j) EXPECT_NEAR(r.state[j].imag(), 0.0, 1e-10);
  }
}

TEST(SpectralDerivative, ConstantIsFlaggedZero) {
  const auto r = quantum_derivative(real_state(Eigen::VectorXd::Constant(8, 0.7)), spectral_derivative(3));
  EXPECT_TRUE(r.zero);
  EXPECT_EQ(r.values().size(), 0);
}

TEST(LcuFdDerivative, PoiseuilleMatchesCentralDifference) {
  FlowConfig c;
  const auto y = c.interior_positions();
  Eigen::VectorXd u(8);
  for (int i = 0; i < 8; ++i) u[i] = 10 * y[static_cast<std::size_t>(i)] * (1 - y[static_cast<std::size_t>(i)]);
  const auto r = quantum_derivative(real_state(u), lcu_fd_derivative(8, c.h()));
  const Eigen::VectorXd ref = central_difference(u, c.h());
  EXPECT_LT((r.values(u.norm()) - ref).norm(), 1e-8);
  // Central differences are exact on a parabola.
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(ref[i], 10 - 20 * y[static_cast<std::size_t>(i)], 1e-12);
}

TEST(LcuFdDerivative, DenseBasisMatchesMatrix) {
  for (int n : {5, 8}) {
    const double h = 0.1;
    const DerivativeOp op = lcu_fd_derivative(n, h);
    const std::size_t dim = std::size_t{1} << op.qubits;
    for (int i = 0; i < n; ++i) {
      std::vector<double> e(dim, 0.0);
      e[static_cast<std::size_t>(i)] = 1.0;
      const auto r = quantum_derivative(AmplitudeState::from_real(e), op);
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      x[i] = 1.0;
      const Eigen::VectorXd ref = central_difference(x, h);
      const Eigen::VectorXd got = r.values();
      for (int k = 0; k < n; ++k) EXPECT_NEAR(got[k], ref[k], 1e-10) << n << " " << i;
      for (std::size_t k = static_cast<std::size_t>(n); k < dim; ++k) EXPECT_NEAR(got[static_cast<Eigen::Index>(k)], 0.0, 1e-10);
    }
  }
}

TEST(LcuFdDerivative, ConstantHasZeroInterior) {
  const double h = 0.125;
  const auto r = quantum_derivative(real_state(Eigen::VectorXd::Constant(8, 2.0)), lcu_fd_derivative(8, h));
  const Eigen::VectorXd d = r.values(Eigen::VectorXd::Constant(8, 2.0).norm());
  for (int i = 1; i < 7; ++i) EXPECT_NEAR(d[i], 0.0, 1e-10);
  // Only the wall neighbours see the zero wall values.
  EXPECT_NEAR(d[0], 2.0 / (2 * h), 1e-10);
  EXPECT_NEAR(d[7], -2.0 / (2 * h), 1e-10);
}

TEST(ClassicalGradient, OneSidedStencilsExactOnQuadratics) {
  const int n = 11;
  const double h = 0.1;
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) g[i] = 3 * (i * h) * (i * h) - 2 * (i * h) + 1;
  const Eigen::VectorXd d = full_grid_gradient(g, h);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(d[i], 6 * i * h - 2, 1e-12);
  EXPECT_THROW(full_grid_gradient(Eigen::VectorXd::Ones(2), h), std::invalid_argument);
}

TEST(QppRegisters, LayoutIsDisjointAndChecked) {
  const QppRegisters regs(3, 8);
  EXPECT_EQ(regs.total(), 19u);
  std::vector<unsigned> all = {regs.up(), regs.a2()};
  for (unsigned j = 0; j < 8; ++j) all.push_back(regs.ub(j));
  for (unsigned j = 0; j < 3; ++j) {
    all.push_back(regs.add(j));
    all.push_back(regs.ua(j));
    all.push_back(regs.a1(j));
  }
  std::sort(all.begin(), all.end());
  for (unsigned i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], i);
  EXPECT_THROW(QppRegisters(3, 1), std::invalid_argument);
  EXPECT_THROW(QppRegisters(0, 4), std::invalid_argument);
  EXPECT_THROW(QppRegisters(8, 8), std::invalid_argument);
}

// Expected state after the address and swap-test stages with every other
// register at zero: a2 = 0 carries (psi|s> + |s>psi) / 2, a2 = 1 the
// difference.
std::vector<Complex> swap_test_reference(const QppRegisters& regs, const std::vector<double>& psi,
                                         const std::vector<std::size_t>& addresses) {
  const std::size_t dim = std::size_t{1} << regs.n;
  std::vector<Complex> out(std::size_t{1} << regs.total(), 0.0);
  const double w = 1.0 / std::sqrt(static_cast<double>(addresses.size()));
  auto index = [&](std::size_t s, std::size_t ua, std::size_t a1, std::size_t a2) {
    return (((s * dim + ua) * dim + a1) << 1) | a2;
  };
  for (std::size_t s : addresses) {
    for (std::size_t c = 0; c < dim; ++c) {
      out[index(s, c, s, 0)] += w * psi[c] / 2.0;
      out[index(s, s, c, 0)] += w * psi[c] / 2.0;
      out[index(s, c, s, 1)] += w * psi[c] / 2.0;
      out[index(s, s, c, 1)] -= w * psi[c] / 2.0;
    }
  }
  return out;
}

TEST(SwapTest, BasisStateForTwoPoints) {
  const QppRegisters regs(1, 2);
  const std::vector<double> psi = {0.0, 1.0};
  for (long s : {0L, 1L}) {
    CircuitProgram p = address_program(regs, s);
    p.append_at(swap_test_program(regs, prepare_real_state(psi, 1)), 0);
    const AmplitudeState st = run_program(p);
    const auto ref = swap_test_reference(regs, psi, {static_cast<std::size_t>(s)});
    for (std::size_t i = 0; i < st.size(); ++i) EXPECT_NEAR(std::abs(st[i] - ref[i]), 0.0, 1e-12);
    // The a2 = 0 branch has weight (1 + u_s^2) / 2.
    EXPECT_NEAR(pattern_probability(st, {{regs.a2(), false}}), 0.5 * (1 + psi[static_cast<std::size_t>(s)] * psi[static_cast<std::size_t>(s)]), 1e-12);
  }
}

TEST(SwapTest, IdenticalRegistersStayInSymmetricBranch) {
  const QppRegisters regs(2, 2);
  CircuitProgram p = address_program(regs, 2);
  p.append_at(swap_test_program(regs, prepare_real_state({0, 0, 1, 0}, 2)), 0);
  EXPECT_NEAR(pattern_probability(run_program(p), {{regs.a2(), false}}), 1.0, 1e-12);
}

TEST(SwapTest, RandomTwoQubitStateMatchesClosedForm) {
  std::mt19937_64 rng(17);
  const QppRegisters regs(2, 2);
  for (int trial = 0; trial < 4; ++trial) {
    const auto psi = random_unit(4, rng);
    CircuitProgram p = address_program(regs);
    p.append_at(swap_test_program(regs, prepare_real_state(psi, 2)), 0);
    const AmplitudeState st = run_program(p);
    const auto ref = swap_test_reference(regs, psi, {0, 1, 2, 3});
    double err = 0.0;
    for (std::size_t i = 0; i < st.size(); ++i) err = std::max(err, std::abs(st[i] - ref[i]));
    EXPECT_LT(err, 1e-12);
  }
  EXPECT_THROW(swap_test_program(regs, CircuitProgram(3)), std::invalid_argument);
}

TEST(GroverIterate, EigenphasesArePlusMinusTwoPiBeta) {
  std::mt19937_64 rng(3);
  const QppRegisters regs(1, 2);
  const auto psi = random_unit(2, rng);
  const CircuitProgram oracle = prepare_real_state(psi, 1);
  const Eigen::MatrixXcd q = testing::program_matrix(grover_iterate(regs, oracle));
  EXPECT_LT((q.adjoint() * q - Eigen::MatrixXcd::Identity(q.rows(), q.cols())).norm(), 1e-10);
  for (long s : {0L, 1L}) {
    CircuitProgram p = address_program(regs, s);
    p.append_at(swap_test_program(regs, oracle), 0);
    const AmplitudeState st = run_program(p);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(st.size()));
    for (std::size_t i = 0; i < st.size(); ++i) v[static_cast<Eigen::Index>(i)] = st[i];
    // Q restricted to span{v, Qv} is a rotation by 2 pi beta.
    Eigen::MatrixXcd basis(v.size(), 2);
    basis.col(0) = v;
    Eigen::VectorXcd w = q * v;
    w -= v * v.dot(w);
    basis.col(1) = w.normalized();
    EXPECT_LT((q * basis - basis * (basis.adjoint() * q * basis)).norm(), 1e-10);
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(basis.adjoint() * q * basis);
    const double beta = beta_of(psi[static_cast<std::size_t>(s)]);
    for (int k = 0; k < 2; ++k) {
      const double phase = std::arg(es.eigenvalues()[k]) / (2 * kPi);
      EXPECT_NEAR(std::min(phase_gap(phase, beta), phase_gap(phase, -beta)), 0.0, 1e-10);
    }
  }
}

TEST(Qadc, ExtremeValuesReadExactly) {
  for (unsigned r : {2u, 3u, 4u}) {
    const std::size_t m = std::size_t{1} << r;
    const CircuitProgram oracle = prepare_real_state({0, 0, 1, 0}, 2);
    const auto hit = qadc_readout(oracle, r, 2);
    EXPECT_NEAR(hit[m / 2], 1.0, 1e-12) << r;
    const auto miss = qadc_readout(oracle, r, 1);
    EXPECT_NEAR(miss[m / 4], 0.5, 1e-12) << r;
    EXPECT_NEAR(miss[3 * m / 4], 0.5, 1e-12) << r;
  }
}

TEST(Qadc, GenericValuesWithinResolution) {
  std::mt19937_64 rng(11);
  const unsigned r = 5;
  const double res = 1.0 / (1 << r);
  for (int trial = 0; trial < 3; ++trial) {
    const auto psi = random_unit(4, rng);
    const CircuitProgram oracle = prepare_real_state(psi, 2);
    for (long s = 0; s < 4; ++s) {
      const auto dist = qadc_readout(oracle, r, s);
      const auto best = static_cast<double>(std::max_element(dist.begin(), dist.end()) - dist.begin()) * res;
      const double beta = beta_of(psi[static_cast<std::size_t>(s)]);
      EXPECT_LE(std::min(phase_gap(best, beta), phase_gap(best, 1 - beta)), res + 1e-12);
    }
  }
}

TEST(Qadc, RoundTripForRepresentableBeta) {
  const unsigned r = 4;
  const std::size_t m = std::size_t{1} << r;
  for (std::size_t k = m / 4; k <= m / 2; ++k) {
    const double beta = static_cast<double>(k) / static_cast<double>(m);
    const double s = std::sin(kPi * beta);
    const double u = std::sqrt(std::max(0.0, 2 * s * s - 1));
    const CircuitProgram oracle = prepare_real_state({u, std::sqrt(1 - u * u)}, 1);
    const auto dist = qadc_readout(oracle, r, 0);
    double err = 0.0;
    for (std::size_t g = 0; g < m; ++g) {
      if (dist[g] < 1e-12) continue;
      EXPECT_TRUE(g == k || g == (m - k) % m) << k << " " << g;
      const double sg = std::sin(kPi * static_cast<double>(g) / static_cast<double>(m));
      err = std::max(err, std::abs(std::sqrt(std::max(0.0, 2 * sg * sg - 1)) - u));
    }
    EXPECT_LE(err, 2.0 / static_cast<double>(m));
  }
}

TEST(Squaring, TableAndRotations) {
  EXPECT_DOUBLE_EQ(squaring_amplitude(0.5), 1.0);
  EXPECT_DOUBLE_EQ(squaring_angle(0.5), kPi);
  EXPECT_NEAR(squaring_amplitude(0.25), 0.0, 1e-15);
  EXPECT_EQ(squaring_amplitude(0.1), 0.0);
  const unsigned r = 4;
  const QppRegisters regs(1, r);
  const SquaringTable table = squaring_table(r);
  // gamma in (3/4, 1) and [0, 1/4) have negative raw values.
  EXPECT_EQ(table.clamped, 7u);
  const CircuitProgram sq = squaring_program(regs);
  for (std::size_t k = 0; k < (std::size_t{1} << r); ++k) {
    const std::size_t index = k << (regs.total() - 1 - r);
    AmplitudeState s = AmplitudeState::basis(regs.total(), index);
    apply_program(s, sq);
    const double gamma = static_cast<double>(k) / 16.0;
    const double a = std::max(0.0, 2 * std::pow(std::sin(kPi * gamma), 2) - 1);
    EXPECT_NEAR(s[index | (std::size_t{1} << (regs.total() - 1))].real(), a, 1e-12) << k;
    EXPECT_NEAR(s[index].real(), std::sqrt(1 - a * a), 1e-12) << k;
  }
}

TEST(Averaging, HadamardsCollectTheSum) {
  std::mt19937_64 rng(2);
  const auto w = random_unit(8, rng);
  AmplitudeState s = AmplitudeState::from_real(w);
  CircuitProgram h(3);
  for (unsigned q = 0; q < 3; ++q) h.append(gate_h(q));
  apply_program(s, h);
  double sum = 0.0;
  for (double x : w) sum += x;
  EXPECT_NEAR(s[0].real(), sum / std::sqrt(8.0), 1e-14);
}

TEST(MeanSquare, AmplitudeIsMeanOfExpectedSquares) {
  std::mt19937_64 rng(23);
  const unsigned r = 4;
  const auto psi = random_unit(4, rng);
  const CircuitProgram oracle = prepare_real_state(psi, 2);
  const MeanSquareResult ms = run_mean_square(oracle, r);
  // Independent route: readout distributions weighted by the table.
  double expected = 0.0;
  for (long s = 0; s < 4; ++s) {
    const auto dist = qadc_readout(oracle, r, s);
    for (std::size_t g = 0; g < dist.size(); ++g) expected += dist[g] * squaring_amplitude(static_cast<double>(g) / 16.0) / 4.0;
  }
  EXPECT_NEAR(ms.amplitude, expected, 1e-10);
  EXPECT_EQ(ms.n_qubits, QppRegisters(2, r).total());
}

FlowConfig small_channel() {
  FlowConfig c;
  c.n_grid = 6;
  return c;
}

Eigen::VectorXd parabola(const FlowConfig& c) {
  const auto y = c.interior_positions();
  Eigen::VectorXd u(c.interior());
  const double g = -c.reynolds * c.dpdx / 2;
  for (int i = 0; i < c.interior(); ++i) u[i] = g * y[static_cast<std::size_t>(i)] * (1 - y[static_cast<std::size_t>(i)]);
  return u;
}

TEST(Dissipation, OraclesAgreeWithTheIntegral) {
  FlowConfig c;
  EXPECT_NEAR(dissipation_analytic(c), 0.1 * 100.0 / 3.0, 1e-12);
  // Trapezoid error of an exact gradient: D h^2 max|f''| / 12 with f = (10 - 20y)^2.
  double prev = 0.0;
  for (int ng : {10, 19, 37}) {
    c.n_grid = ng;
    const double err = dissipation_classical(c, parabola(c)) - dissipation_analytic(c);
    EXPECT_GT(err, 0.0);
    EXPECT_LE(err, c.nu() * 800.0 * c.h() * c.h() / 12.0 + 1e-12);
    if (prev > 0.0) EXPECT_NEAR(prev / err, 4.0, 0.2);
    prev = err;
  }
  c.n_grid = 10;
  const Eigen::VectorXd d = central_difference(parabola(c), c.h());
  EXPECT_NEAR(dissipation_classical_interior(c, parabola(c)), c.nu() * d.squaredNorm() / 8.0, 1e-12);
}

TEST(Dissipation, SmallPipelineMatchesClassical) {
  const FlowConfig c = small_channel();
  const unsigned r_bits = 8;
  const DissipationResult r = dissipation(c, parabola(c), {r_bits, DerivativeMethod::kLcuFd});
  EXPECT_TRUE(r.staged);
  EXPECT_FALSE(r.zero_derivative);
  // Leakage budget: |da/dgamma| <= 2 pi times the readout resolution.
  EXPECT_NEAR(r.epsilon / r.epsilon_classical, 1.0, 2 * kPi / (1 << r_bits));
  EXPECT_NEAR(r.epsilon, c.nu() * r.derivative_norm * r.derivative_norm * r.mean_square / 4, 1e-12);
}

TEST(Dissipation, ConstantPeriodicProfileIsZero) {
  const FlowConfig c = small_channel();
  const DissipationResult r = dissipation(c, Eigen::VectorXd::Constant(4, 1.5), {4, DerivativeMethod::kSpectral});
  EXPECT_TRUE(r.zero_derivative);
  EXPECT_EQ(r.epsilon, 0.0);
}

TEST(Dissipation, RejectsUnsupportedInputs) {
  FlowConfig c = small_channel();
  EXPECT_THROW(dissipation(c, Eigen::VectorXd::Ones(3)), ConfigError);
  EXPECT_THROW(dissipation(c, Eigen::VectorXd::Zero(4)), ConfigError);
  c.boundary = Boundary::kCouette;
  EXPECT_THROW(dissipation(c, parabola(c)), ConfigError);
  c = small_channel();
  c.n_grid = 7;
  EXPECT_THROW(dissipation(c, parabola(c), {4, DerivativeMethod::kSpectral}), ConfigError);
}

TEST(Dissipation, SweepCsvFormat) {
  std::ostringstream out;
  write_sweep_csv(out, {{10, 1.5, 2.5, 3.5, 7}});
  EXPECT_EQ(out.str(), "reynolds,epsilon_quantum,epsilon_classical,epsilon_analytic,iterations\n10,1.5,2.5,3.5,7\n");
}

}  // namespace
}  // namespace qflow
