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

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "qflow/core/circuit.h"
#include "qflow/qlsa/hhl.h"

namespace qflow {

enum class ScanEvaluator {
  /// Full gate-level HHL run per cell.
  kCircuit,
  /// Closed-form QPE model, identical to the circuit up to round-off.
  kModel,
};

struct TQScanResult {
  std::vector<double> t0s;
  std::vector<unsigned> q_pes;
  /// epsilon[iq][it] for q_pes[iq], t0s[it]. Cells whose post-selection
  /// failed hold 2, the largest distance between unit vectors.
  std::vector<std::vector<double>> epsilon;
  std::vector<std::vector<bool>> failed;
  /// Per q_pe: index and value of the row minimum (ties toward smaller t0).
  std::vector<std::size_t> locus_index;
  std::vector<double> locus;
  std::vector<double> eps_min;
  /// Lower median of the locus.
  double t0_star = 0.0;
  double kappa = 0.0;

  /// max(locus) - min(locus).
  double locus_spread() const;
  double range() const { return t0s.back() - t0s.front(); }
  double at(std::size_t iq, std::size_t it) const { return epsilon[iq][it]; }
};

/// Evenly spaced t0 values in [2 pi lo / lambda_bound, 2 pi hi / lambda_bound]
/// where lambda_bound is the Wolkowicz bound on |lambda| of the dilated
/// matrix. The bound overestimates sigma_max, so for the channel systems the
/// range ends below the aliasing edge t0 = pi / sigma_max.
std::vector<double> default_t0_range(const HermitianSystem& hsys, int points = 32, double lo = 0.1, double hi = 0.9);

/// epsilon(t0, q_pe) = ||x_q - x_c|| against the dense solve. Cells run in
/// parallel and are stored by index, so results do not depend on the thread
/// count. An empty b_prep selects signed QSP-1. Throws PostSelectionError
/// when every cell fails.
TQScanResult tq_scan(const HermitianSystem& hsys, const std::vector<double>& t0s, const std::vector<unsigned>& q_pes,
                     ScanEvaluator evaluator = ScanEvaluator::kCircuit, const CircuitProgram& b_prep = CircuitProgram());

/// Long format "t0,q_pe,epsilon" and a JSON summary (locus, T0*, kappa).
void write_scan_csv(std::ostream& out, const TQScanResult& scan);
std::string scan_summary_json(const TQScanResult& scan);

}  // namespace qflow
