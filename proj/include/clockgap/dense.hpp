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
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "clockgap/vec.hpp"

namespace clockgap {

/// Dense real symmetric matrix, row-major.  Small sizes only: this is the
/// backing store for the Jacobi cross-check solver, not a general matrix type.
class DenseSym {
 public:
  explicit DenseSym(std::size_t n) : n_(n), a_(n * n, 0.0) {
    if (n == 0) throw std::invalid_argument("DenseSym: size must be positive");
  }

  static DenseSym identity(std::size_t n) {
    DenseSym m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

struct DenseEigs {
  std::vector<double> eigenvalues;                // ascending
  std::vector<std::vector<double>> eigenvectors;  // same order; empty unless requested
};

/// Eigen-decomposition of a dense real symmetric matrix by cyclic Jacobi
/// rotations.  Quadratically convergent; every off-diagonal entry is driven
/// to exactly zero (with the usual small-rotation skip once entries fall
/// below working precision).
inline DenseEigs jacobi_eigs(DenseSym a, bool want_vectors = false, int max_sweeps = 64) {
  const std::size_t n = a.size();
  DenseSym v = DenseSym::identity(want_vectors ? n : 1);

  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(a(p, q));
    if (off == 0.0) {
      converged = true;
      break;
    }
    // Threshold the first few sweeps so tiny entries do not trigger
    // needless rotations while large ones remain.
    const double thresh = (sweep < 3) ? 0.2 * off / double(n * n) : 0.0;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = 100.0 * std::abs(a(p, q));
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
        } else if (std::abs(a(p, q)) > thresh) {
          const double h = a(q, q) - a(p, p);
          double t;
          if (std::abs(h) + g == std::abs(h)) {
            t = a(p, q) / h;
          } else {
            const double theta = 0.5 * h / a(p, q);
            t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
            if (theta < 0.0) t = -t;
          }
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const double tau = s / (1.0 + c);
          const double hh = t * a(p, q);
          a(p, p) -= hh;
          a(q, q) += hh;
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            if (j == p || j == q) continue;
            const double gj = a(j, p);
            const double hj = a(j, q);
            a(j, p) = gj - s * (hj + gj * tau);
            a(p, j) = a(j, p);
            a(j, q) = hj + s * (gj - hj * tau);
            a(q, j) = a(j, q);
          }
          if (want_vectors) {
            for (std::size_t j = 0; j < n; ++j) {
              const double gj = v(j, p);
              const double hj = v(j, q);
              v(j, p) = gj - s * (hj + gj * tau);
              v(j, q) = hj + s * (gj - hj * tau);
            }
          }
        }
      }
    }
  }
  if (!converged) {
    // One more scan: accept if the residual off-diagonal mass is at
    // rounding level relative to the matrix scale.
    double off = 0.0, scale = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      scale = std::max(scale, std::abs(a(p, p)));
      for (std::size_t q = p + 1; q < n; ++q) off += std::abs(a(p, q));
    }
    if (off > 1e-13 * std::max(scale, 1.0))
      throw std::runtime_error("jacobi_eigs: no convergence after " +
                               std::to_string(max_sweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  DenseEigs out;
  out.eigenvalues.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.eigenvalues.push_back(a(order[k], order[k]));
  if (want_vectors) {
    out.eigenvectors.resize(n, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out.eigenvectors[k][j] = v(j, order[k]);
  }
  return out;
}

/// Eigenvalues of a complex Hermitian matrix (row-major, size n*n) through
/// the standard real embedding [[Re, -Im], [Im, Re]], whose spectrum is that
/// of the original matrix with every eigenvalue doubled.
inline std::vector<double> hermitian_eigs(const std::vector<cplx>& h, std::size_t n) {
  if (h.size() != n * n) throw std::invalid_argument("hermitian_eigs: size mismatch");
  if (n == 0 || n > 4096) throw std::invalid_argument("hermitian_eigs: dimension out of range");
  double defect = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      defect = std::max(defect, std::abs(h[i * n + j] - std::conj(h[j * n + i])));
  if (defect > 1e-10) throw std::invalid_argument("hermitian_eigs: matrix is not Hermitian");

  DenseSym m(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double re = 0.5 * (h[i * n + j].real() + h[j * n + i].real());
      const double im = 0.5 * (h[i * n + j].imag() - h[j * n + i].imag());
      m(i, j) = re;
      m(i + n, j + n) = re;
      m(i, j + n) = -im;
      m(i + n, j) = im;
    }
  }
  const DenseEigs eigs = jacobi_eigs(std::move(m), /*want_vectors=*/false);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t k = 0; k < 2 * n; k += 2) out.push_back(eigs.eigenvalues[k]);
  return out;
}

}  // namespace clockgap
