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

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "clockgap/circuit.hpp"
#include "clockgap/vec.hpp"

namespace testutil {

using clockgap::cplx;

inline std::vector<cplx> random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(dim);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  const double n = clockgap::cnorm2(v);
  for (auto& x : v) x /= n;
  return v;
}

// Haar-ish random unitary via modified Gram-Schmidt on a Gaussian matrix.
inline std::vector<cplx> random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  while (true) {
    std::vector<std::vector<cplx>> cols(dim, std::vector<cplx>(dim));
    for (auto& c : cols)
      for (auto& x : c) x = cplx(g(rng), g(rng));
    bool ok = true;
    for (std::size_t j = 0; j < dim && ok; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < dim; ++i) proj += std::conj(cols[k][i]) * cols[j][i];
        for (std::size_t i = 0; i < dim; ++i) cols[j][i] -= proj * cols[k][i];
      }
      const double n = clockgap::cnorm2(cols[j]);
      if (n < 1e-6) {
        ok = false;
        break;
      }
      for (auto& x : cols[j]) x /= n;
    }
    if (!ok) continue;
    std::vector<cplx> m(dim * dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) m[r * dim + c] = cols[c][r];
    return m;
  }
}

inline clockgap::Circuit random_circuit(int n_qubits, int length, std::mt19937_64& rng,
                                        bool include_custom = true) {
  static const char* kNames1[] = {"x", "y", "z", "h", "s", "t"};
  std::uniform_int_distribution<int> qubit(0, n_qubits - 1);
  const int top = include_custom ? 9 : (n_qubits >= 2 ? 7 : 5);
  std::uniform_int_distribution<int> pick(0, top);
  std::vector<clockgap::Gate> gates;
  for (int k = 0; k < length; ++k) {
    const int what = pick(rng);
    if (what < 6) {
      gates.push_back(clockgap::Gate::named(kNames1[what], {qubit(rng)}));
    } else if (what < 8 && n_qubits >= 2) {
      int a = qubit(rng), b = qubit(rng);
      while (b == a) b = qubit(rng);
      gates.push_back(clockgap::Gate::named(what == 6 ? "cnot" : "cz", {a, b}));
    } else if (what == 8 || n_qubits < 2) {
      gates.push_back(clockgap::Gate::custom({qubit(rng)}, random_unitary(2, rng)));
    } else {
      int a = qubit(rng), b = qubit(rng);
      while (b == a) b = qubit(rng);
      gates.push_back(clockgap::Gate::custom({a, b}, random_unitary(4, rng)));
    }
  }
  return clockgap::Circuit(n_qubits, std::move(gates));
}

}  // namespace testutil
