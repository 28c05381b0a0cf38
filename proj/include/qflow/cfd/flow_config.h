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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace qflow {

enum class Boundary { kPoiseuille, kCouette };
enum class Scheme { kBE1, kBE2, kFE };

std::string to_string(Boundary b);
std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);
Boundary boundary_from_string(const std::string& s);

/// Physical and numerical parameters of the 1D channel problem
///   du/dt = -dp/dx + (1/Re) d2u/dy2,  u(0) = 0,  u(D) = u_wall (Couette) or 0.
///
/// Grid: N_g points y_i = i*h, h = D/(N_g-1); the N_g-2 interior values are
/// the unknowns and the wall values enter through the forcing vector.
struct FlowConfig {
  int n_grid = 10;
  double reynolds = 10.0;
  double dpdx = -2.0;
  double dt = 0.01;
  double total_time = 1.0;
  /// Number of time steps m; 0 means ceil(total_time / dt).
  int steps = 0;
  /// Steady-state copies p appended to one-shot systems; -1 selects the
  /// default rule (see default_padding).
  int p_pad = -1;
  Boundary boundary = Boundary::kPoiseuille;
  double u_in = 1.0;
  double domain_width = 1.0;
  /// Moving-wall speed for Couette flow.
  double wall_velocity = 1.0;

  double nu() const { return 1.0 / reynolds; }
  double h() const { return domain_width / (n_grid - 1); }
  int interior() const { return n_grid - 2; }
  int m() const;
  double u_top() const { return boundary == Boundary::kCouette ? wall_velocity : 0.0; }
  /// dt / h^2.
  double courant() const { return dt / (h() * h()); }
  /// Throws ConfigError when a parameter is out of range.
  void validate() const;
  /// Interior coordinates y_1..y_{N_g-2}.
  std::vector<double> interior_positions() const;
  std::vector<double> grid_positions() const;
};

using KeyValues = std::map<std::string, std::string>;

/// "key = value" lines; '#' starts a comment. Duplicate keys are an error.
KeyValues parse_key_values(std::istream& in);
KeyValues load_key_values(const std::string& path);
/// Reads the flow keys and ignores the rest.
FlowConfig flow_config_from(const KeyValues& kv);
const std::vector<std::string>& flow_config_keys();

}  // namespace qflow
