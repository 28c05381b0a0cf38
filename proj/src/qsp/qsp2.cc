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

#include "qflow/qsp/qsp2.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "qflow/qsp/decompose.h"

namespace qflow {

namespace {

struct Edge {
  double weight = 0.0;
  int id = -1;
};

class Builder {
 public:
  Builder(DecisionDiagram& dd, const std::vector<SparseEntry>& e) : dd_(dd), e_(e) {}

  Edge build(unsigned level, std::size_t lo, std::size_t hi) {
    if (lo == hi) return {};
    const unsigned n = dd_.n_qubits;
    if (level == n) return {e_[lo].value, 0};
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - level);
    std::size_t mid = lo;
    while (mid < hi && (e_[mid].index & bit) == 0) ++mid;
    const Edge e0 = build(level + 1, lo, mid);
    const Edge e1 = build(level + 1, mid, hi);
    const double norm = std::hypot(e0.weight, e1.weight);
    if (e0.id >= 0 && e0.id == e1.id && std::abs(e0.weight - e1.weight) <= 1e-12 * norm) {
      ++dd_.eliminated;
      return {norm, e0.id};
    }
    DecisionDiagram::Node node;
    node.level = level;
    node.child[0] = e0.id;
    node.child[1] = e1.id;
    node.weight[0] = e0.weight / norm;
    node.weight[1] = e1.weight / norm;
    const auto key = std::make_tuple(level, e0.id, e1.id, std::llround(node.weight[0] * 1e12),
                                     std::llround(node.weight[1] * 1e12));
    auto it = unique_.find(key);
    if (it != unique_.end()) return {norm, it->second};
    const int id = static_cast<int>(dd_.nodes.size());
    dd_.nodes.push_back(node);
    unique_.emplace(key, id);
    return {norm, id};
  }

 private:
  DecisionDiagram& dd_;
  const std::vector<SparseEntry>& e_;
  std::map<std::tuple<unsigned, int, int, long long, long long>, int> unique_;
};

using Cube = std::vector<signed char>;  // -1 free, 0 or 1 fixed

bool disjoint(const Cube& a, const Cube& b) {
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (a[q] >= 0 && b[q] >= 0 && a[q] != b[q]) return true;
  }
  return false;
}

// Returns the position where the cubes differ if they are identical except for
// one opposite literal, else -1.
int adjacent(const Cube& a, const Cube& b) {
  int pos = -1;
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (a[q] == b[q]) continue;
    if (a[q] < 0 || b[q] < 0 || pos >= 0) return -1;
    pos = static_cast<int>(q);
  }
  return pos;
}

// Merges adjacent cubes until none are left. `key` lets callers keep only
// cubes of the same class together.
template <typename Item, typename CubeOf, typename SameClass>
void merge_adjacent(std::vector<Item>& items, CubeOf cube_of, SameClass same) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < items.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < items.size() && !changed; ++j) {
        if (!same(items[i], items[j])) continue;
        const int pos = adjacent(cube_of(items[i]), cube_of(items[j]));
        if (pos < 0) continue;
        cube_of(items[i])[static_cast<std::size_t>(pos)] = -1;
        items.erase(items.begin() + static_cast<long>(j));
        changed = true;
      }
    }
  }
}

struct Branch {
  int node;
  Cube cube;
};

}  // namespace

std::size_t DecisionDiagram::paths() const {
  if (root < 0) return 0;
  std::vector<std::size_t> count(nodes.size(), 0);
  count[0] = 1;
  // Children are created before their parents, so ids are topologically sorted.
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    for (int b = 0; b < 2; ++b) {
      if (nodes[i].child[b] >= 0) count[i] += count[static_cast<std::size_t>(nodes[i].child[b])];
    }
  }
  return count[static_cast<std::size_t>(root)];
}

bool DecisionDiagram::has_redundant_node() const {
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    if (nd.child[0] >= 0 && nd.child[0] == nd.child[1] && std::abs(nd.weight[0] - nd.weight[1]) < 1e-12) {
      return true;
    }
  }
  return false;
}

std::vector<double> DecisionDiagram::to_dense() const {
  std::vector<double> out(std::size_t{1} << n_qubits, 0.0);
  auto expand = [&](auto&& self, int id, unsigned level, std::uint64_t prefix, double amp) -> void {
    if (level == n_qubits) {
      out[prefix] += amp;
      return;
    }
    const auto& nd = nodes[static_cast<std::size_t>(id)];
    if (nd.level > level) {
      self(self, id, level + 1, 2 * prefix, amp * std::numbers::sqrt2 / 2);
      self(self, id, level + 1, 2 * prefix + 1, amp * std::numbers::sqrt2 / 2);
      return;
    }
    for (int b = 0; b < 2; ++b) {
      if (nd.child[b] >= 0) self(self, nd.child[b], level + 1, 2 * prefix + static_cast<unsigned>(b), amp * nd.weight[b]);
    }
  };
  if (root >= 0) expand(expand, root, 0, 0, 1.0);
  return out;
}

DecisionDiagram build_decision_diagram(const std::vector<SparseEntry>& entries, unsigned n) {
  if (n == 0 || n > 40) throw std::invalid_argument("decision diagrams support 1..40 qubits");
  std::vector<SparseEntry> e;
  for (const auto& x : entries) {
    if (x.index >> n) throw std::invalid_argument("sparse index out of range");
    if (x.value < 0.0) throw std::invalid_argument("sparse state values must be nonnegative");
    if (x.value != 0.0) e.push_back(x);
  }
  std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i].index == e[i - 1].index) throw std::invalid_argument("duplicate sparse index");
  }
  if (e.empty()) throw std::invalid_argument("sparse state has no nonzero amplitude");
  DecisionDiagram dd;
  dd.n_qubits = n;
  dd.nonzeros = e.size();
  DecisionDiagram::Node terminal;
  terminal.level = n;
  dd.nodes.push_back(terminal);
  Builder builder(dd, e);
  const Edge root = builder.build(0, 0, e.size());
  dd.root = root.id;
  dd.norm = root.weight;
  return dd;
}

CircuitProgram qsp2_synthesize(const DecisionDiagram& dd) {
  const unsigned n = dd.n_qubits;
  const unsigned anc = n;
  CircuitProgram p(n + kQsp2Ancillas);
  std::vector<Branch> branches{{dd.root, Cube(n, -1)}};
  for (unsigned l = 0; l < n; ++l) {
    std::vector<double> theta(branches.size());
    for (std::size_t b = 0; b < branches.size(); ++b) {
      const auto& nd = dd.nodes[static_cast<std::size_t>(branches[b].node)];
      theta[b] = nd.level > l ? std::numbers::pi / 2 : 2.0 * std::atan2(nd.weight[1], nd.weight[0]);
    }
    // Most common angle goes first, unconditionally.
    double common = theta[0];
    std::size_t best = 0;
    for (double t : theta) {
      const auto c = static_cast<std::size_t>(
          std::count_if(theta.begin(), theta.end(), [&](double u) { return std::abs(u - t) < 1e-12; }));
      if (c > best) {
        best = c;
        common = t;
      }
    }
    // Route A: unconditional common angle plus grouped corrections.
    CircuitProgram route_a(n + kQsp2Ancillas);
    if (std::abs(common) > 1e-14) route_a.append(gate_ry(l, common));
    struct Correction {
      double delta;
      Cube cube;
    };
    std::vector<Correction> corr;
    for (std::size_t b = 0; b < branches.size(); ++b) {
      const double d = theta[b] - common;
      if (std::abs(d) > 1e-13) corr.push_back({d, branches[b].cube});
    }
    merge_adjacent(
        corr, [](Correction& c) -> Cube& { return c.cube; },
        [](const Correction& a, const Correction& b) { return std::abs(a.delta - b.delta) < 1e-12; });
    for (std::size_t i = 0; i < corr.size(); ++i) {
      Cube& cube = corr[i].cube;
      for (unsigned q = 0; q < l; ++q) {
        if (cube[q] < 0) continue;
        const signed char keep = cube[q];
        cube[q] = -1;
        bool ok = true;
        for (std::size_t b = 0; b < branches.size() && ok; ++b) {
          const bool same_delta = std::abs(theta[b] - common - corr[i].delta) < 1e-12;
          if (!same_delta) ok = disjoint(cube, branches[b].cube);
        }
        for (std::size_t j = 0; j < corr.size() && ok; ++j) {
          if (j != i && std::abs(corr[j].delta - corr[i].delta) < 1e-12) ok = disjoint(cube, corr[j].cube);
        }
        if (!ok) cube[q] = keep;
      }
      std::vector<Control> controls;
      for (unsigned q = 0; q < l; ++q) {
        if (cube[q] >= 0) controls.push_back({q, cube[q] == 1});
      }
      Scratch scratch;
      scratch.clean.push_back(anc);
      for (unsigned q = l + 1; q < n; ++q) scratch.clean.push_back(q);
      for (unsigned q = 0; q < l; ++q) {
        if (cube[q] < 0) scratch.dirty.push_back(q);
      }
      append_mcry(route_a, controls, l, corr[i].delta, scratch);
    }

    // Route B: one multiplexor over the qubits that the branch cubes fix.
    std::vector<unsigned> fixed;
    for (unsigned q = 0; q < l; ++q) {
      for (const auto& br : branches) {
        if (br.cube[q] >= 0) {
          fixed.push_back(q);
          break;
        }
      }
    }
    CircuitProgram route_b(n + kQsp2Ancillas);
    if (fixed.size() <= 16) {
      const std::size_t k = fixed.size();
      std::vector<double> angles(std::size_t{1} << k, 0.0);
      for (std::size_t x = 0; x < angles.size(); ++x) {
        for (std::size_t b = 0; b < branches.size(); ++b) {
          bool match = true;
          for (std::size_t j = 0; j < k && match; ++j) {
            const signed char lit = branches[b].cube[fixed[j]];
            match = lit < 0 || static_cast<std::size_t>(lit) == ((x >> (k - 1 - j)) & 1);
          }
          if (match) {
            angles[x] = theta[b];
            break;
          }
        }
      }
      append_uniformly_controlled_ry(route_b, fixed, l, angles);
    }
    const bool use_b = fixed.size() <= 16 && circuit_stats(route_b).cnot < circuit_stats(route_a).cnot;
    p.append_at(use_b ? route_b : route_a, 0);

    std::vector<Branch> next;
    for (const auto& br : branches) {
      const auto& nd = dd.nodes[static_cast<std::size_t>(br.node)];
      if (nd.level > l) {
        next.push_back(br);
      } else if (nd.child[1] < 0) {
        next.push_back({nd.child[0], br.cube});
      } else if (nd.child[0] < 0 || nd.child[0] == nd.child[1]) {
        next.push_back({nd.child[1], br.cube});
      } else {
        Cube c0 = br.cube, c1 = br.cube;
        c0[l] = 0;
        c1[l] = 1;
        next.push_back({nd.child[0], c0});
        next.push_back({nd.child[1], c1});
      }
    }
    merge_adjacent(
        next, [](Branch& b) -> Cube& { return b.cube; },
        [](const Branch& a, const Branch& b) { return a.node == b.node; });
    branches = std::move(next);
  }
  return p;
}

CircuitProgram qsp2_synthesize(const std::vector<SparseEntry>& entries, unsigned n) {
  return qsp2_synthesize(build_decision_diagram(entries, n));
}

double cnot_report(const CircuitProgram& p1, const CircuitProgram& p2) {
  const auto c1 = circuit_stats(p1).cnot;
  if (c1 == 0) return 0.0;
  return 100.0 * (1.0 - static_cast<double>(circuit_stats(p2).cnot) / static_cast<double>(c1));
}

std::vector<SparseEntry> read_sparse_csv(std::istream& in) {
  std::vector<SparseEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected index,value");
    try {
      std::size_t used = 0;
      const long long idx = std::stoll(line.substr(0, comma), &used);
      if (idx < 0) throw std::invalid_argument("negative index");
      out.push_back({static_cast<std::uint64_t>(idx), std::stod(line.substr(comma + 1))});
    } catch (const std::exception&) {
      if (out.empty() && lineno == 1) continue;  // header
      throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed entry");
    }
  }
  return out;
}

std::vector<double> sparse_to_dense(const std::vector<SparseEntry>& entries, unsigned n) {
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (const auto& e : entries) {
    if (e.index >> n) throw std::invalid_argument("sparse index out of range");
    v[e.index] = e.value;
  }
  return v;
}

std::vector<SparseEntry> dense_to_sparse(const std::vector<double>& values, double tol) {
  std::vector<SparseEntry> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) > tol) out.push_back({i, values[i]});
  }
  return out;
}

}  // namespace qflow
