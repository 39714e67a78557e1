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

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clockgap/circuit.hpp"
#include "clockgap/dense.hpp"
#include "clockgap/tridiag.hpp"
#include "clockgap/vec.hpp"

namespace clockgap {

/// Hermitian operator on the composite clock (x) logical space, stored as a
/// coordinate map.  Entries are kept for both (r,c) and (c,r); insertion
/// enforces the conjugate pair so hermiticity holds by construction.
///
/// Composite basis index = l * 2^N + a, where l is the clock value and a the
/// logical basis index (qubit 0 = most significant bit of a).
class SparseHermitian {
 public:
  SparseHermitian(std::size_t dim, int n_qubits, int length)
      : dim_(dim), n_qubits_(n_qubits), length_(length) {
    if (dim == 0) throw std::invalid_argument("operator: zero dimension");
  }

  std::size_t dim() const { return dim_; }
  int n_qubits() const { return n_qubits_; }
  int length() const { return length_; }

  /// Add v to entry (r, c) and conj(v) to (c, r).
  void add(std::size_t r, std::size_t c, cplx v) {
    if (r >= dim_ || c >= dim_) throw std::invalid_argument("operator: index out of range");
    if (r == c) {
      if (std::abs(v.imag()) > 1e-14 * (1.0 + std::abs(v.real())))
        throw std::invalid_argument("operator: non-real diagonal entry");
      entries_[{r, c}] += v.real();
    } else {
      entries_[{r, c}] += v;
      entries_[{c, r}] += std::conj(v);
    }
  }

  const std::map<std::pair<std::size_t, std::size_t>, cplx>& entries() const { return entries_; }

  std::vector<cplx> apply(const std::vector<cplx>& x) const {
    if (x.size() != dim_) throw std::invalid_argument("operator: vector dimension mismatch");
    std::vector<cplx> y(dim_, 0.0);
    for (const auto& [rc, v] : entries_) y[rc.first] += v * x[rc.second];
    return y;
  }

  cplx expectation(const std::vector<cplx>& x) const { return cdot(x, apply(x)); }

  /// c_a * A + c_b * B with matching shapes.
  static SparseHermitian combine(const SparseHermitian& a, double ca, const SparseHermitian& b,
                                 double cb) {
    if (a.dim_ != b.dim_ || a.n_qubits_ != b.n_qubits_ || a.length_ != b.length_)
      throw std::invalid_argument("operator: shape mismatch in combine");
    SparseHermitian out(a.dim_, a.n_qubits_, a.length_);
    for (const auto& [rc, v] : a.entries_) out.entries_[rc] += ca * v;
    for (const auto& [rc, v] : b.entries_) out.entries_[rc] += cb * v;
    return out;
  }

  /// Row-major dense copy; guarded so an oversized operator cannot be
  /// expanded by accident.
  std::vector<cplx> to_dense() const {
    if (dim_ > 4096) throw std::invalid_argument("operator: dense expansion capped at 4096");
    std::vector<cplx> m(dim_ * dim_, 0.0);
    for (const auto& [rc, v] : entries_) m[rc.first * dim_ + rc.second] = v;
    return m;
  }

  /// Largest |H[r][c] - conj(H[c][r])| over stored entries.
  double hermiticity_defect() const {
    double defect = 0.0;
    for (const auto& [rc, v] : entries_) {
      auto it = entries_.find({rc.second, rc.first});
      const cplx other = (it == entries_.end()) ? cplx(0.0) : it->second;
      defect = std::max(defect, std::abs(v - std::conj(other)));
    }
    return defect;
  }

 private:
  std::size_t dim_;
  int n_qubits_;
  int length_;
  std::map<std::pair<std::size_t, std::size_t>, cplx> entries_;
};

namespace detail {

/// Column b of the gate's full 2^N unitary, as (row, amplitude) pairs.
inline std::vector<std::pair<std::size_t, cplx>> gate_column(const Gate& g, int n_qubits,
                                                             std::size_t b) {
  StateVector col = apply_gate(StateVector::computational_basis(std::size_t{1} << n_qubits, b), g);
  std::vector<std::pair<std::size_t, cplx>> out;
  for (std::size_t r = 0; r < col.dim(); ++r)
    if (col.amplitudes[r] != cplx(0.0)) out.emplace_back(r, col.amplitudes[r]);
  return out;
}

}  // namespace detail

/// Propagation term: for each step l = 1..L,
///   1/2 (I (x) |l-1><l-1| + I (x) |l><l| - U_l (x) |l><l-1| - U_l^dag (x) |l-1><l|).
inline SparseHermitian build_clock_hamiltonian(const Circuit& c) {
  const int L = c.length();
  const std::size_t logical = std::size_t{1} << c.n_qubits;
  SparseHermitian h(static_cast<std::size_t>(L + 1) * logical, c.n_qubits, L);
  for (int l = 1; l <= L; ++l) {
    const std::size_t lo = static_cast<std::size_t>(l - 1) * logical;
    const std::size_t hi = static_cast<std::size_t>(l) * logical;
    for (std::size_t a = 0; a < logical; ++a) {
      h.add(lo + a, lo + a, 0.5);
      h.add(hi + a, hi + a, 0.5);
    }
    for (std::size_t b = 0; b < logical; ++b)
      for (const auto& [a, amp] : detail::gate_column(c.gates[static_cast<std::size_t>(l - 1)],
                                                      c.n_qubits, b))
        h.add(hi + a, lo + b, -0.5 * amp);  // conjugate mirror added implicitly
  }
  return h;
}

/// Input-penalty term: counts set logical bits at clock 0 and charges one
/// unit of energy to every clock value >= 1.
inline SparseHermitian build_h_init(const Circuit& c) {
  const int L = c.length();
  const std::size_t logical = std::size_t{1} << c.n_qubits;
  SparseHermitian h(static_cast<std::size_t>(L + 1) * logical, c.n_qubits, L);
  for (std::size_t a = 0; a < logical; ++a) {
    const int bits = std::popcount(a);
    if (bits != 0) h.add(a, a, static_cast<double>(bits));
  }
  for (int l = 1; l <= L; ++l) {
    const std::size_t off = static_cast<std::size_t>(l) * logical;
    for (std::size_t a = 0; a < logical; ++a) h.add(off + a, off + a, 1.0);
  }
  return h;
}

/// Final Hamiltonian: propagation term plus the clock-0 input penalty.
inline SparseHermitian build_h_final(const Circuit& c) {
  SparseHermitian h = build_clock_hamiltonian(c);
  const std::size_t logical = std::size_t{1} << c.n_qubits;
  for (std::size_t a = 0; a < logical; ++a) {
    const int bits = std::popcount(a);
    if (bits != 0) h.add(a, a, static_cast<double>(bits));
  }
  return h;
}

/// Interpolated Hamiltonian H(s) = (1-s) H_init + s H_final.
inline SparseHermitian build_hs(const Circuit& c, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("interpolation: s must lie in [0,1]");
  return SparseHermitian::combine(build_h_init(c), 1.0 - s, build_h_final(c), s);
}

/// The computational path through the composite space: gamma[l] is the state
/// after l gates, tagged with clock value l; eta is their uniform
/// superposition (the history state).
struct PathBasis {
  std::vector<StateVector> gammas;
  StateVector eta;
};

inline PathBasis path_basis(const Circuit& c) {
  const int L = c.length();
  const std::size_t logical = std::size_t{1} << c.n_qubits;
  const std::size_t dim = static_cast<std::size_t>(L + 1) * logical;
  std::vector<StateVector> gammas;
  gammas.reserve(static_cast<std::size_t>(L + 1));
  std::vector<cplx> eta(dim, 0.0);
  const double w = 1.0 / std::sqrt(static_cast<double>(L + 1));
  for (int l = 0; l <= L; ++l) {
    const StateVector prefix = run_prefix(c, l);
    std::vector<cplx> full(dim, 0.0);
    const std::size_t off = static_cast<std::size_t>(l) * logical;
    for (std::size_t a = 0; a < logical; ++a) {
      full[off + a] = prefix.amplitudes[a];
      eta[off + a] = w * prefix.amplitudes[a];
    }
    gammas.emplace_back(std::move(full));
  }
  return PathBasis{std::move(gammas), StateVector(std::move(eta))};
}

/// Compress H(s) to the path basis.  The result is real symmetric
/// tridiagonal and independent of the circuit's gates; matrix elements that
/// should vanish are checked against a 1e-12 guard before being dropped.
inline SymTridiag project_to_path(const Circuit& c, double s) {
  const SparseHermitian h = build_hs(c, s);
  const PathBasis basis = path_basis(c);
  const int L = c.length();
  const std::size_t n = static_cast<std::size_t>(L + 1);
  std::vector<std::vector<cplx>> hg(n);
  for (std::size_t l = 0; l < n; ++l) hg[l] = h.apply(basis.gammas[l].amplitudes);
  std::vector<double> diag(n), off(n - 1);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = l; m < n; ++m) {
      const cplx e = cdot(basis.gammas[l].amplitudes, hg[m]);
      if (m > l + 1) {
        if (std::abs(e) > 1e-12)
          throw std::runtime_error("path projection: entry (" + std::to_string(l) + "," +
                                   std::to_string(m) + ") = " + std::to_string(std::abs(e)) +
                                   " breaks tridiagonal form");
        continue;
      }
      if (std::abs(e.imag()) > 1e-12)
        throw std::runtime_error("path projection: complex matrix element at (" +
                                 std::to_string(l) + "," + std::to_string(m) + ")");
      if (m == l)
        diag[l] = e.real();
      else
        off[l] = e.real();
    }
  return SymTridiag{std::move(diag), std::move(off)};
}

/// Largest norm of the component of H(s) gamma[l] outside the path span.
/// Zero (to rounding) because the span is an invariant subspace.
inline double check_invariant_subspace(const Circuit& c, double s) {
  const SparseHermitian h = build_hs(c, s);
  const PathBasis basis = path_basis(c);
  double worst = 0.0;
  for (const StateVector& g : basis.gammas) {
    std::vector<cplx> y = h.apply(g.amplitudes);
    for (const StateVector& p : basis.gammas) {
      const cplx coef = cdot(p.amplitudes, y);
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= coef * p.amplitudes[i];
    }
    worst = std::max(worst, cnorm2(y));
  }
  return worst;
}

/// All eigenvalues of the operator via dense diagonalization (for
/// cross-checks on small instances).
inline std::vector<double> dense_eigenvalues(const SparseHermitian& h) {
  return hermitian_eigs(h.to_dense(), h.dim());
}

}  // namespace clockgap
