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

#include "qflow/core/io.h"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qflow {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string kind_name(GateKind k) {
  switch (k) {
    case GateKind::kH:
      return "H";
    case GateKind::kX:
      return "X";
    case GateKind::kRy:
      return "RY";
    case GateKind::kPhase:
      return "PHASE";
    case GateKind::kSwap:
      return "SWAP";
    case GateKind::kDiagonal:
      return "DIAG";
    case GateKind::kUnitary:
      return "UNITARY";
  }
  return "?";
}

GateKind kind_from(const std::string& s) {
  if (s == "H") return GateKind::kH;
  if (s == "X") return GateKind::kX;
  if (s == "RY") return GateKind::kRy;
  if (s == "PHASE") return GateKind::kPhase;
  if (s == "SWAP") return GateKind::kSwap;
  if (s == "DIAG") return GateKind::kDiagonal;
  if (s == "UNITARY") return GateKind::kUnitary;
  throw std::invalid_argument("unknown gate kind '" + s + "'");
}

unsigned parse_uint(const std::string& s) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad qubit index '" + s + "'");
  }
  return v;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

Complex parse_complex(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw std::invalid_argument("expected re,im pair, got '" + s + "'");
  return {parse_double(parts[0]), parse_double(parts[1])};
}

}  // namespace

void write_circuit(std::ostream& out, const CircuitProgram& program) {
  out << "QUBITS " << program.n_qubits() << "\n";
  for (const auto& op : program.ops()) {
    out << kind_name(op.kind) << ' ';
    for (std::size_t i = 0; i < op.targets.size(); ++i) {
      out << (i ? "," : "") << op.targets[i];
    }
    for (const auto& c : op.controls) out << " c:" << (c.on_one ? "" : "!") << c.qubit;
    if (op.kind == GateKind::kRy || op.kind == GateKind::kPhase) out << ' ' << fmt(op.angle);
    if (op.kind == GateKind::kDiagonal) {
      for (const auto& d : op.diagonal) out << ' ' << fmt(d.real()) << ',' << fmt(d.imag());
    }
    if (op.kind == GateKind::kUnitary) {
      const auto& m = *op.matrix;
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          out << ' ' << fmt(m(r, c).real()) << ',' << fmt(m(r, c).imag());
        }
      }
    }
    out << "\n";
  }
}

CircuitProgram read_circuit(std::istream& in) {
  std::string line;
  CircuitProgram program;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok[0] != "QUBITS" || tok.size() != 2) throw std::invalid_argument("missing QUBITS header");
      program = CircuitProgram(parse_uint(tok[1]));
      have_header = true;
      continue;
    }
    if (tok.size() < 2) throw std::invalid_argument("gate line needs a target: " + line);
    GateOp op;
    op.kind = kind_from(tok[0]);
    for (const auto& t : split(tok[1], ',')) op.targets.push_back(parse_uint(t));
    std::vector<std::string> params;
    for (std::size_t i = 2; i < tok.size(); ++i) {
      if (tok[i].rfind("c:", 0) == 0) {
        std::string q = tok[i].substr(2);
        const bool on_one = q.empty() || q[0] != '!';
        if (!on_one) q = q.substr(1);
        op.controls.push_back({parse_uint(q), on_one});
      } else {
        params.push_back(tok[i]);
      }
    }
    const std::size_t dim = std::size_t{1} << op.targets.size();
    switch (op.kind) {
      case GateKind::kRy:
      case GateKind::kPhase:
        if (params.size() != 1) throw std::invalid_argument("expected one angle: " + line);
        op.angle = parse_double(params[0]);
        break;
      case GateKind::kDiagonal:
        if (params.size() != dim) throw std::invalid_argument("diagonal size mismatch: " + line);
        for (const auto& p : params) op.diagonal.push_back(parse_complex(p));
        break;
      case GateKind::kUnitary: {
        if (params.size() != dim * dim) throw std::invalid_argument("unitary size mismatch: " + line);
        Eigen::MatrixXcd m(dim, dim);
        for (std::size_t r = 0; r < dim; ++r) {
          for (std::size_t c = 0; c < dim; ++c) m(r, c) = parse_complex(params[r * dim + c]);
        }
        op.matrix = std::make_shared<const Eigen::MatrixXcd>(std::move(m));
        break;
      }
      default:
        if (!params.empty()) throw std::invalid_argument("unexpected parameters: " + line);
    }
    program.append(std::move(op));
  }
  if (!have_header) throw std::invalid_argument("missing QUBITS header");
  return program;
}

std::string circuit_to_text(const CircuitProgram& program) {
  std::ostringstream out;
  write_circuit(out, program);
  return out.str();
}

CircuitProgram circuit_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_circuit(in);
}

void write_state_csv(std::ostream& out, const AmplitudeState& state) {
  out << "index,re,im\n";
  for (std::size_t i = 0; i < state.size(); ++i) {
    out << i << ',' << fmt(state[i].real()) << ',' << fmt(state[i].imag()) << "\n";
  }
}

AmplitudeState read_state_csv(std::istream& in) {
  std::string line;
  std::vector<Complex> amps;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("index", 0) == 0) continue;
    }
    const auto parts = split(line, ',');
    if (parts.size() != 3) throw std::invalid_argument("state CSV rows need index,re,im");
    const std::size_t idx = parse_uint(parts[0]);
    if (idx != amps.size()) throw std::invalid_argument("state CSV indices must be consecutive");
    amps.emplace_back(parse_double(parts[1]), parse_double(parts[2]));
  }
  return AmplitudeState::from_amplitudes(std::move(amps));
}

}  // namespace qflow
