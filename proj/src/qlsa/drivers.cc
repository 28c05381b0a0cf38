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

#include "qflow/qlsa/drivers.h"

#include <cmath>
#include <limits>

#include "qflow/core/errors.h"
#include "qflow/qlsa/qpe_model.h"
#include "qflow/qsp/qsp1.h"
#include "qflow/qsp/qsp2.h"

namespace qflow {

namespace {

double overlap_fidelity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double d = a.normalized().dot(b.normalized());
  return d * d;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd dilate_rhs(const HermitianSystem& hsys, const Eigen::VectorXd& b) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(hsys.dilated_rhs.size());
  d.head(b.size()) = b;
  return d;
}

}  // namespace

Eigen::VectorXd be1_model_fixed_point(const FlowConfig& config, const HermitianSystem& hsys, const QPEConfig& qpe) {
  const Eigen::MatrixXd g = hhl_model_inverse(hsys, qpe);
  const Eigen::VectorXd fdt = forcing_vector(config) * config.dt;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(g.rows(), g.cols());
  return (eye - g).fullPivLu().solve(g * fdt);
}

IterativeRun iterative_be_driver(const FlowConfig& config, const IterativeOptions& options) {
  config.validate();
  const int n = config.interior();
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, config.u_in);
  const LinearSystem base = build_be1_system(config, u);
  const HermitianSystem hsys = hermitian_dilation(base);

  QPEConfig qpe = options.qpe;
  if (!(qpe.t0 > 0.0)) {
    const Eigen::VectorXd target = -Eigen::MatrixXd(build_laplacian(config))
                                        .fullPivLu()
                                        .solve(forcing_vector(config)) * config.reynolds;
    qpe.t0 = optimize_t0(max_t0(hsys) * (1.0 - 1e-9), [&](double t0) {
               QPEConfig c = qpe;
               c.t0 = t0;
               const Eigen::VectorXd fp = be1_model_fixed_point(config, hsys, c);
               return std::sqrt((fp - target).squaredNorm() / static_cast<double>(n));
             }).t0;
  }
  const HHLCircuit circuit(hsys, qpe, 0);
  const Eigen::MatrixXd a = base.dense();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::VectorXd fdt = forcing_vector(config) * config.dt;
  const int max_iter = options.max_iter > 0 ? options.max_iter : 10 * config.m();

  IterativeRun run;
  run.config_used = qpe;
  run.profiles.push_back(u);
  for (int j = 0; j < max_iter; ++j) {
    const Eigen::VectorXd b = u + fdt;
    const Eigen::VectorXd bd = dilate_rhs(hsys, b);
    const CircuitProgram prep = prepare_real_state(to_std(bd.normalized()), hsys.system_qubits());
    HHLResult r = circuit.run(prep, bd.norm(), false);
    const Eigen::VectorXd next = r.scaled_solution;
    run.fidelity.push_back(overlap_fidelity(next, lu.solve(b)));
    run.success_probability.push_back(r.success_probability);
    run.residual = (next - u).lpNorm<Eigen::Infinity>();
    u = next;
    run.profiles.push_back(u);
    run.iterations = j + 1;
    if (run.residual <= options.tol) {
      run.converged = true;
      run.last = std::move(r);
      run.last.stats = circuit_stats(circuit.program(prep));
      break;
    }
    if (j + 1 == max_iter) run.last = std::move(r);
  }
  if (!run.converged && options.require_convergence) {
    throw ConvergenceError("iterative BE driver did not converge in " + std::to_string(max_iter) +
                           " iterations (residual " + std::to_string(run.residual) + ")");
  }
  return run;
}

OneShotRun one_shot_driver(const FlowConfig& config, Scheme scheme, const OneShotOptions& options) {
  OneShotRun run;
  run.system = build_one_shot_system(config, scheme);
  const HermitianSystem hsys = hermitian_dilation(run.system);
  run.classical = solve_block_forward(run.system);

  QPEConfig qpe = options.qpe;
  if (!(qpe.t0 > 0.0)) qpe.t0 = optimize_t0_for_solution(hsys, qpe.q_pe, qpe.c_rot).t0;

  const Eigen::VectorXd bn = hsys.dilated_rhs.normalized();
  const bool nonnegative = (bn.array() >= 0.0).all();
  CircuitProgram prep;
  if (options.prep == StatePrep::kQsp2 && nonnegative) {
    prep = qsp2_synthesize(dense_to_sparse(to_std(bn)), hsys.system_qubits());
  } else {
    prep = prepare_real_state(to_std(bn), hsys.system_qubits());
  }
  run.result = hhl_solve(hsys, qpe, prep);

  const int bs = run.system.block_size;
  Eigen::VectorXd x = run.result.scaled_solution;
  if (options.rescale == Rescale::kInitialBlock && config.u_in != 0.0) {
    const Eigen::VectorXd x0 = x.head(bs);
    const double denom = x0.squaredNorm();
    if (denom > 0.0) x *= config.u_in * x0.sum() / denom;
  }
  run.space_time = x;
  run.final_profile = block(x, bs, config.m());
  run.fidelity = overlap_fidelity(x, run.classical);
  return run;
}

}  // namespace qflow
