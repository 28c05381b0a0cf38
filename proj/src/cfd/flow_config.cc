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

#include "qflow/cfd/flow_config.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "qflow/core/errors.h"

namespace qflow {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' expects a number, got '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d)) throw ConfigError("key '" + key + "' expects an integer");
  return static_cast<int>(d);
}

}  // namespace

std::string to_string(Boundary b) { return b == Boundary::kCouette ? "couette" : "poiseuille"; }

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::kBE1:
      return "be1";
    case Scheme::kBE2:
      return "be2";
    case Scheme::kFE:
      return "fe";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "be1") return Scheme::kBE1;
  if (s == "be2") return Scheme::kBE2;
  if (s == "fe") return Scheme::kFE;
  throw ConfigError("unknown scheme '" + s + "' (expected be1, be2 or fe)");
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "poiseuille") return Boundary::kPoiseuille;
  if (s == "couette") return Boundary::kCouette;
  throw ConfigError("unknown boundary '" + s + "' (expected poiseuille or couette)");
}

int FlowConfig::m() const {
  if (steps > 0) return steps;
  return static_cast<int>(std::ceil(total_time / dt - 1e-9));
}

void FlowConfig::validate() const {
  if (n_grid < 3) throw ConfigError("n_grid must be at least 3");
  if (!(dt > 0)) throw ConfigError("dt must be positive");
  if (!(reynolds > 0)) throw ConfigError("reynolds must be positive");
  if (!(domain_width > 0)) throw ConfigError("domain_width must be positive");
  if (!(total_time > 0) && steps <= 0) throw ConfigError("total_time or steps must be positive");
  if (p_pad < -1) throw ConfigError("p_pad must be -1 (auto) or non-negative");
}

std::vector<double> FlowConfig::interior_positions() const {
  std::vector<double> y(static_cast<std::size_t>(interior()));
  for (int i = 0; i < interior(); ++i) y[static_cast<std::size_t>(i)] = (i + 1) * h();
  return y;
}

std::vector<double> FlowConfig::grid_positions() const {
  std::vector<double> y(static_cast<std::size_t>(n_grid));
  for (int i = 0; i < n_grid; ++i) y[static_cast<std::size_t>(i)] = i * h();
  return y;
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second) throw ConfigError("duplicate key '" + key + "'");
  }
  return kv;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_key_values(in);
}

const std::vector<std::string>& flow_config_keys() {
  static const std::vector<std::string> keys = {
      "n_grid", "reynolds",   "dpdx", "dt",           "total_time",   "steps",
      "p_pad",  "boundary", "u_in", "domain_width", "wall_velocity"};
  return keys;
}

FlowConfig flow_config_from(const KeyValues& kv) {
  FlowConfig c;
  auto get = [&kv](const char* k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto v = get("n_grid")) c.n_grid = to_int("n_grid", *v);
  if (auto v = get("reynolds")) c.reynolds = to_double("reynolds", *v);
  if (auto v = get("dpdx")) c.dpdx = to_double("dpdx", *v);
  if (auto v = get("dt")) c.dt = to_double("dt", *v);
  if (auto v = get("total_time")) c.total_time = to_double("total_time", *v);
  if (auto v = get("steps")) c.steps = to_int("steps", *v);
  if (auto v = get("p_pad")) c.p_pad = to_int("p_pad", *v);
  if (auto v = get("boundary")) c.boundary = boundary_from_string(*v);
  if (auto v = get("u_in")) c.u_in = to_double("u_in", *v);
  if (auto v = get("domain_width")) c.domain_width = to_double("domain_width", *v);
  if (auto v = get("wall_velocity")) c.wall_velocity = to_double("wall_velocity", *v);
  c.validate();
  return c;
}

}  // namespace qflow
