// Copyright 2026 The Clockgap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clockgap/vec.hpp"

namespace clockgap {

enum class GateKind { X, Y, Z, H, S, T, CNOT, CZ, Custom };

namespace detail {

inline void check_unitary(const std::vector<cplx>& m, std::size_t dim, const std::string& what) {
  if (m.size() != dim * dim) throw std::invalid_argument(what + ": matrix size mismatch");
  for (const cplx& x : m)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw std::invalid_argument(what + ": non-finite matrix entry");
  // max-norm of U^dagger U - I; reject rather than renormalize.
  double defect = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += std::conj(m[k * dim + i]) * m[k * dim + j];
      if (i == j) s -= 1.0;
      defect = std::max(defect, std::abs(s));
    }
  if (defect > 1e-12)
    throw std::invalid_argument(what + ": matrix is not unitary (defect " +
                                std::to_string(defect) + ")");
}

}  // namespace detail

/// One gate: a named single- or two-qubit unitary, or a custom matrix.
/// `matrix` is row-major (2x2 or 4x4) and is populated for named gates too,
/// so application needs only one code path.  Two-qubit matrices act on the
/// ordered pair (targets[0], targets[1]) with targets[0] as the high bit.
struct Gate {
  GateKind kind = GateKind::Custom;
  std::string name;
  std::vector<int> targets;
  std::vector<cplx> matrix;

  static Gate named(const std::string& name, std::vector<int> targets);
  static Gate custom(std::vector<int> targets, std::vector<cplx> matrix);

  std::size_t arity() const { return targets.size(); }
};

inline Gate Gate::custom(std::vector<int> targets, std::vector<cplx> matrix) {
  Gate g;
  g.kind = GateKind::Custom;
  g.name = "custom";
  g.targets = std::move(targets);
  if (g.targets.empty() || g.targets.size() > 2)
    throw std::invalid_argument("gate: expected 1 or 2 targets");
  if (g.targets.size() == 2 && g.targets[0] == g.targets[1])
    throw std::invalid_argument("gate: target qubits must be distinct");
  for (int t : g.targets)
    if (t < 0) throw std::invalid_argument("gate: negative qubit index");
  detail::check_unitary(matrix, g.targets.size() == 1 ? 2 : 4, "gate");
  g.matrix = std::move(matrix);
  return g;
}

inline Gate Gate::named(const std::string& name, std::vector<int> targets) {
  std::string id = name;
  std::transform(id.begin(), id.end(), id.begin(), [](unsigned char c) { return std::tolower(c); });
  const cplx i1(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);

  GateKind kind;
  std::vector<cplx> m;
  std::size_t arity = 1;
  if (id == "x") {
    kind = GateKind::X;
    m = {0, 1, 1, 0};
  } else if (id == "y") {
    kind = GateKind::Y;
    m = {0, -i1, i1, 0};
  } else if (id == "z") {
    kind = GateKind::Z;
    m = {1, 0, 0, -1};
  } else if (id == "h") {
    kind = GateKind::H;
    m = {r, r, r, -r};
  } else if (id == "s") {
    kind = GateKind::S;
    m = {1, 0, 0, i1};
  } else if (id == "t") {
    kind = GateKind::T;
    m = {1, 0, 0, std::polar(1.0, M_PI / 4.0)};
  } else if (id == "cnot") {
    kind = GateKind::CNOT;
    arity = 2;
    m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
  } else if (id == "cz") {
    kind = GateKind::CZ;
    arity = 2;
    m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
  } else {
    throw std::invalid_argument("gate: unknown name '" + name + "'");
  }
  if (targets.size() != arity)
    throw std::invalid_argument("gate '" + id + "': expected " + std::to_string(arity) +
                                " target(s), got " + std::to_string(targets.size()));
  Gate g;
  if (arity == 2 && targets[0] == targets[1])
    throw std::invalid_argument("gate: target qubits must be distinct");
  for (int t : targets)
    if (t < 0) throw std::invalid_argument("gate: negative qubit index");
  g.kind = kind;
  g.name = id;
  g.targets = std::move(targets);
  g.matrix = std::move(m);
  return g;
}

/// A gate list on N qubits.  The all-zeros state is the fixed input; the
/// circuit's output is the state after all gates.
struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  Circuit(int n, std::vector<Gate> g) : n_qubits(n), gates(std::move(g)) {
    if (n_qubits < 1) throw std::invalid_argument("circuit: n_qubits must be >= 1");
    if (gates.empty()) throw std::invalid_argument("circuit: at least one gate is required");
    for (std::size_t k = 0; k < gates.size(); ++k)
      for (int t : gates[k].targets)
        if (t >= n_qubits)
          throw std::invalid_argument("circuit: gates[" + std::to_string(k) + "] target " +
                                      std::to_string(t) + " out of range [0," +
                                      std::to_string(n_qubits) + ")");
  }

  int length() const { return static_cast<int>(gates.size()); }
};

/// Complex amplitude vector.  Dimension 2^N for a logical register, or
/// (L+1) 2^N on the composite clock (x) logical space.  Unit norm enforced.
struct StateVector {
  std::vector<cplx> amplitudes;

  explicit StateVector(std::vector<cplx> a) : amplitudes(std::move(a)) {
    if (amplitudes.empty()) throw std::invalid_argument("state: empty amplitude vector");
    const double n = cnorm2(amplitudes);
    if (std::abs(n - 1.0) > 1e-12)
      throw std::invalid_argument("state: norm deviates from 1 by " + std::to_string(n - 1.0));
  }

  static StateVector computational_basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::invalid_argument("state: basis index out of range");
    std::vector<cplx> a(dim, 0.0);
    a[index] = 1.0;
    return StateVector(std::move(a));
  }

  std::size_t dim() const { return amplitudes.size(); }
};

namespace detail {

inline int qubit_count_for_dim(std::size_t dim) {
  int n = 0;
  std::size_t d = dim;
  while (d > 1) {
    if (d % 2 != 0) throw std::invalid_argument("state: dimension is not a power of two");
    d /= 2;
    ++n;
  }
  if (n == 0) throw std::invalid_argument("state: dimension must be at least 2");
  return n;
}

}  // namespace detail

/// Apply one gate.  Qubit 0 is the most significant bit of the basis index.
inline StateVector apply_gate(const StateVector& state, const Gate& gate) {
  const std::size_t dim = state.dim();
  const int n = detail::qubit_count_for_dim(dim);
  for (int t : gate.targets)
    if (t >= n)
      throw std::invalid_argument("apply_gate: target " + std::to_string(t) +
                                  " out of range [0," + std::to_string(n) + ")");
  std::vector<cplx> a = state.amplitudes;
  if (gate.arity() == 1) {
    const std::size_t bit = std::size_t{1} << (n - 1 - gate.targets[0]);
    const std::vector<cplx>& m = gate.matrix;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const cplx a0 = a[i], a1 = a[i | bit];
      a[i] = m[0] * a0 + m[1] * a1;
      a[i | bit] = m[2] * a0 + m[3] * a1;
    }
  } else {
    const std::size_t b0 = std::size_t{1} << (n - 1 - gate.targets[0]);
    const std::size_t b1 = std::size_t{1} << (n - 1 - gate.targets[1]);
    const std::vector<cplx>& m = gate.matrix;
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & b0) || (i & b1)) continue;
      const std::size_t idx[4] = {i, i | b1, i | b0, i | b0 | b1};
      cplx in[4], out[4];
      for (int k = 0; k < 4; ++k) in[k] = a[idx[k]];
      for (int r = 0; r < 4; ++r) {
        cplx s = 0.0;
        for (int c = 0; c < 4; ++c) s += m[r * 4 + c] * in[c];
        out[r] = s;
      }
      for (int k = 0; k < 4; ++k) a[idx[k]] = out[k];
    }
  }
  return StateVector(std::move(a));
}

/// State after the first l gates applied to |0...0>.  l = 0 gives the input
/// state itself.
inline StateVector run_prefix(const Circuit& c, int l) {
  if (l < 0 || l > c.length())
    throw std::invalid_argument("run_prefix: prefix length out of range [0," +
                                std::to_string(c.length()) + "]");
  StateVector st = StateVector::computational_basis(std::size_t{1} << c.n_qubits, 0);
  for (int k = 0; k < l; ++k) st = apply_gate(st, c.gates[static_cast<std::size_t>(k)]);
  return st;
}

}  // namespace clockgap
