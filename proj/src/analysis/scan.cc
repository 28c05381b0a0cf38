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

#include "qflow/analysis/scan.h"

#include <algorithm>
#include <cstdio>
#include <json.hpp>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "qflow/analysis/spectral.h"
#include "qflow/core/errors.h"
#include "qflow/core/parallel.h"
#include "qflow/qlsa/qpe_model.h"

namespace qflow {

double TQScanResult::locus_spread() const {
  if (locus.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(locus.begin(), locus.end());
  return *hi - *lo;
}

std::vector<double> default_t0_range(const HermitianSystem& hsys, int points, double lo, double hi) {
  if (points < 1 || !(hi >= lo) || !(lo > 0.0)) throw std::invalid_argument("invalid t0 range request");
  const double bound = eig_bounds(hsys.dilated).abs_max_bound();
  const double a = 2.0 * std::numbers::pi * lo / bound, b = 2.0 * std::numbers::pi * hi / bound;
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = points == 1 ? a : a + (b - a) * i / (points - 1);
  return t;
}

TQScanResult tq_scan(const HermitianSystem& hsys, const std::vector<double>& t0s, const std::vector<unsigned>& q_pes,
                     ScanEvaluator evaluator, const CircuitProgram& b_prep) {
  if (t0s.empty() || q_pes.empty()) throw std::invalid_argument("scan ranges must be nonempty");
  if (!std::is_sorted(t0s.begin(), t0s.end())) throw std::invalid_argument("t0 values must be ascending");
  TQScanResult r;
  r.t0s = t0s;
  r.q_pes = q_pes;
  r.kappa = condition_number(hsys.original);
  const std::size_t nt = t0s.size(), nq = q_pes.size();
  r.epsilon.assign(nq, std::vector<double>(nt, 0.0));
  r.failed.assign(nq, std::vector<bool>(nt, false));
  const Eigen::VectorXd exact = hsys.classical_solution();
  const CircuitProgram prep = b_prep.n_qubits() == 0 ? prepare_dilated_rhs(hsys) : b_prep;
  const unsigned extra = prep.n_qubits() - hsys.system_qubits();
  std::vector<char> failed_flat(nq * nt, 0);
  std::vector<double> eps_flat(nq * nt, 0.0);

  parallel_for(nq * nt, [&](std::size_t cell) {
    const std::size_t iq = cell / nt, it = cell % nt;
    const QPEConfig cfg{q_pes[iq], t0s[it], 0.0};
    try {
      Eigen::VectorXd x;
      if (evaluator == ScanEvaluator::kCircuit) {
        x = HHLCircuit(hsys, cfg, extra).run(prep, hsys.dilated_rhs.norm(), false).solution;
      } else {
        x = hhl_model_inverse(hsys, cfg) * hsys.rhs;
        if (!(x.norm() > 1e-300)) throw PostSelectionError("empty branch");
      }
      eps_flat[cell] = qlsa_error(x, exact);
    } catch (const PostSelectionError&) {
      failed_flat[cell] = 1;
      eps_flat[cell] = 2.0;
    }
  });

  std::size_t n_failed = 0;
  for (std::size_t iq = 0; iq < nq; ++iq) {
    for (std::size_t it = 0; it < nt; ++it) {
      r.epsilon[iq][it] = eps_flat[iq * nt + it];
      r.failed[iq][it] = failed_flat[iq * nt + it] != 0;
      n_failed += failed_flat[iq * nt + it];
    }
  }
  if (n_failed == nq * nt) throw PostSelectionError("post-selection failed in every scan cell");
  for (std::size_t iq = 0; iq < nq; ++iq) {
    std::size_t best = 0;
    for (std::size_t it = 1; it < nt; ++it) {
      if (r.epsilon[iq][it] < r.epsilon[iq][best]) best = it;
    }
    r.locus_index.push_back(best);
    r.locus.push_back(t0s[best]);
    r.eps_min.push_back(r.epsilon[iq][best]);
  }
  std::vector<double> sorted = r.locus;
  std::sort(sorted.begin(), sorted.end());
  r.t0_star = sorted[(sorted.size() - 1) / 2];
  return r;
}

void write_scan_csv(std::ostream& out, const TQScanResult& scan) {
  out << "t0,q_pe,epsilon\n";
  char buf[96];
  for (std::size_t iq = 0; iq < scan.q_pes.size(); ++iq) {
    for (std::size_t it = 0; it < scan.t0s.size(); ++it) {
      std::snprintf(buf, sizeof buf, "%.17g,%u,%.17g\n", scan.t0s[it], scan.q_pes[iq], scan.epsilon[iq][it]);
      out << buf;
    }
  }
}

std::string scan_summary_json(const TQScanResult& scan) {
  nlohmann::json j;
  j["t0_star"] = scan.t0_star;
  j["kappa"] = scan.kappa;
  j["t0_range"] = {scan.t0s.front(), scan.t0s.back()};
  j["locus_spread"] = scan.locus_spread();
  nlohmann::json locus = nlohmann::json::array();
  for (std::size_t iq = 0; iq < scan.q_pes.size(); ++iq) {
    locus.push_back({{"q_pe", scan.q_pes[iq]}, {"t0", scan.locus[iq]}, {"eps_min", scan.eps_min[iq]}});
  }
  j["locus"] = locus;
  return j.dump(2);
}

}  // namespace qflow
