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

#include "qflow/cfd/systems.h"

#include <Eigen/SVD>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "qflow/core/errors.h"

namespace qflow {

namespace {

using Triplet = Eigen::Triplet<double>;

void add_block(std::vector<Triplet>& t, int row0, int col0, const Eigen::MatrixXd& b) {
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      if (b(i, j) != 0.0) t.emplace_back(row0 + i, col0 + j, b(i, j));
    }
  }
}

void check_fe_stability(const FlowConfig& config) {
  if (config.courant() > 0.5 + 1e-12) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "explicit scheme unstable: dt/h^2 = %.6g exceeds 0.5",
                  config.courant());
    throw StabilityError(buf);
  }
}

LinearSystem one_shot(const FlowConfig& config, Scheme scheme) {
  config.validate();
  const int n = config.interior();
  const int m = config.m();
  if (m < 1) throw ConfigError("one-shot systems need at least one time step");
  const int p = default_padding(config, scheme);
  const int levels = m + p + 1;
  const Eigen::MatrixXd a = Eigen::MatrixXd(system_operator(config));
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd fdt = forcing_vector(config) * config.dt;

  std::vector<Triplet> t;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n * levels);
  add_block(t, 0, 0, eye);
  rhs.head(n).setConstant(config.u_in);
  for (int j = 1; j < levels; ++j) {
    const bool dynamic = j <= m;
    Eigen::MatrixXd diag = eye, sub = -eye;
    if (dynamic && scheme == Scheme::kBE2) diag = eye - a * config.dt;
    if (dynamic && scheme == Scheme::kFE) sub = -(eye + a * config.dt);
    add_block(t, j * n, j * n, diag);
    add_block(t, j * n, (j - 1) * n, sub);
    if (dynamic) rhs.segment(j * n, n) = fdt;
  }
  LinearSystem sys;
  sys.matrix.resize(n * levels, n * levels);
  sys.matrix.setFromTriplets(t.begin(), t.end());
  sys.rhs = rhs;
  sys.scheme = scheme;
  sys.block_size = n;
  sys.blocks = levels;
  return sys;
}

}  // namespace

int LinearSystem::sparsity() const {
  int s = 0;
  for (int r = 0; r < matrix.outerSize(); ++r) {
    int c = 0;
    for (SparseMatrix::InnerIterator it(matrix, r); it; ++it) c += it.value() != 0.0 ? 1 : 0;
    s = std::max(s, c);
  }
  return s;
}

double LinearSystem::kappa() const {
  if (!kappa_) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(dense());
    const auto& sv = svd.singularValues();
    const double smin = sv[sv.size() - 1];
    if (!(smin > 1e-14)) throw std::invalid_argument("singular matrix");
    kappa_ = sv[0] / smin;
  }
  return *kappa_;
}

SparseMatrix build_laplacian(const FlowConfig& config) {
  if (config.n_grid < 3) throw ConfigError("n_grid must be at least 3");
  const int n = config.interior();
  const double inv_h2 = 1.0 / (config.h() * config.h());
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, -2.0 * inv_h2);
    if (i > 0) t.emplace_back(i, i - 1, inv_h2);
    if (i + 1 < n) t.emplace_back(i, i + 1, inv_h2);
  }
  SparseMatrix l(n, n);
  l.setFromTriplets(t.begin(), t.end());
  return l;
}

SparseMatrix system_operator(const FlowConfig& config) {
  SparseMatrix a = build_laplacian(config) * config.nu();
  return a;
}

Eigen::VectorXd forcing_vector(const FlowConfig& config) {
  const int n = config.interior();
  Eigen::VectorXd f = Eigen::VectorXd::Constant(n, -config.dpdx);
  const double wall = config.nu() / (config.h() * config.h());
  f[n - 1] += wall * config.u_top();
  // The lower wall is at rest in both flow kinds.
  return f;
}

LinearSystem build_be1_system(const FlowConfig& config, const Eigen::VectorXd& u_prev) {
  config.validate();
  const int n = config.interior();
  if (u_prev.size() != n) throw std::invalid_argument("u_prev length must equal the interior size");
  SparseMatrix eye(n, n);
  eye.setIdentity();
  LinearSystem sys;
  sys.matrix = eye - system_operator(config) * config.dt;
  sys.rhs = u_prev + forcing_vector(config) * config.dt;
  sys.scheme = Scheme::kBE1;
  sys.block_size = n;
  sys.blocks = 1;
  return sys;
}

LinearSystem build_be2_system(const FlowConfig& config) { return one_shot(config, Scheme::kBE2); }

LinearSystem build_fe_system(const FlowConfig& config) {
  check_fe_stability(config);
  return one_shot(config, Scheme::kFE);
}

LinearSystem build_one_shot_system(const FlowConfig& config, Scheme scheme) {
  switch (scheme) {
    case Scheme::kBE2:
      return build_be2_system(config);
    case Scheme::kFE:
      return build_fe_system(config);
    default:
      throw ConfigError("one-shot systems use the be2 or fe scheme");
  }
}

std::vector<Eigen::VectorXd> march(const FlowConfig& config, Scheme scheme, int steps) {
  const int n = config.interior();
  const Eigen::MatrixXd a = Eigen::MatrixXd(system_operator(config));
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd fdt = forcing_vector(config) * config.dt;
  std::vector<Eigen::VectorXd> out;
  out.push_back(Eigen::VectorXd::Constant(n, config.u_in));
  if (scheme == Scheme::kFE) {
    const Eigen::MatrixXd step = eye + a * config.dt;
    for (int j = 0; j < steps; ++j) out.push_back(step * out.back() + fdt);
  } else {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(eye - a * config.dt);
    for (int j = 0; j < steps; ++j) out.push_back(lu.solve(out.back() + fdt));
  }
  return out;
}

int default_padding(const FlowConfig& config, Scheme scheme) {
  if (config.p_pad >= 0) return config.p_pad;
  const int m = config.m();
  const auto u = march(config, scheme, m);
  if (m >= 1 && (u[static_cast<std::size_t>(m)] - u[static_cast<std::size_t>(m - 1)])
                        .lpNorm<Eigen::Infinity>() < 1e-6) {
    return 0;
  }
  return 1;
}

Eigen::VectorXd solve_dense(const LinearSystem& system) {
  const Eigen::MatrixXd a = system.dense();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw std::invalid_argument("singular matrix");
  return lu.solve(system.rhs);
}

Eigen::VectorXd block(const Eigen::VectorXd& x, int block_size, int j) {
  return x.segment(static_cast<Eigen::Index>(j) * block_size, block_size);
}

Eigen::VectorXd solve_block_forward(const LinearSystem& system) {
  const int n = system.block_size;
  const int levels = system.blocks;
  if (n <= 0 || n * levels != system.dim()) throw std::invalid_argument("system is not blocked");
  const Eigen::MatrixXd a = system.dense();
  for (int bi = 0; bi < levels; ++bi) {
    for (int bj = 0; bj < levels; ++bj) {
      if (bj == bi || bj == bi - 1) continue;
      if (a.block(bi * n, bj * n, n, n).cwiseAbs().maxCoeff() != 0.0) {
        throw std::invalid_argument("system is not lower block-bidiagonal");
      }
    }
  }
  Eigen::VectorXd x(system.dim());
  for (int j = 0; j < levels; ++j) {
    Eigen::VectorXd r = system.rhs.segment(j * n, n);
    if (j > 0) r -= a.block(j * n, (j - 1) * n, n, n) * x.segment((j - 1) * n, n);
    x.segment(j * n, n) = a.block(j * n, j * n, n, n).partialPivLu().solve(r);
  }
  return x;
}

Be1Iteration iterate_be1_classical(const FlowConfig& config, double tol, int max_iter) {
  if (max_iter <= 0) max_iter = 10 * std::max(config.m(), 100);
  Be1Iteration it;
  Eigen::VectorXd u = Eigen::VectorXd::Constant(config.interior(), config.u_in);
  it.profiles.push_back(u);
  for (int j = 0; j < max_iter; ++j) {
    const auto sys = build_be1_system(config, u);
    Eigen::VectorXd next = solve_dense(sys);
    it.residual = (next - u).lpNorm<Eigen::Infinity>();
    u = next;
    it.profiles.push_back(u);
    it.iterations = j + 1;
    if (it.residual <= tol) {
      it.converged = true;
      break;
    }
  }
  return it;
}

std::vector<double> with_walls(const FlowConfig& config, const Eigen::VectorXd& interior) {
  std::vector<double> full;
  full.reserve(static_cast<std::size_t>(interior.size() + 2));
  full.push_back(0.0);
  for (Eigen::Index i = 0; i < interior.size(); ++i) full.push_back(interior[i]);
  full.push_back(config.u_top());
  return full;
}

void write_matrix_market(std::ostream& out, const SparseMatrix& matrix) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << matrix.rows() << ' ' << matrix.cols() << ' ' << matrix.nonZeros() << "\n";
  char buf[64];
  for (int r = 0; r < matrix.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(matrix, r); it; ++it) {
      std::snprintf(buf, sizeof buf, "%.17g", it.value());
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << buf << "\n";
    }
  }
}

void write_vector_csv(std::ostream& out, const Eigen::VectorXd& v, const char* name) {
  out << "index," << name << "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    out << i << ',' << buf << "\n";
  }
}

}  // namespace qflow
