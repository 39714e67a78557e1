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
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clockgap/dense.hpp"
#include "clockgap/vec.hpp"

namespace clockgap {

inline constexpr double kBisectTol = 1e-13;     // absolute eigenvalue tolerance
inline constexpr double kResidualTol = 1e-10;   // ||Mv - lambda v|| per eigenpair
inline constexpr double kClusterTol = 1e-8;     // eigenvalue clustering threshold
inline constexpr int kMaxInverseIters = 50;

/// Symmetric tridiagonal matrix.  `diag` has length n >= 1 and `offdiag`
/// length n-1; all entries must be finite.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> offdiag;

  SymTridiag(std::vector<double> d, std::vector<double> e)
      : diag(std::move(d)), offdiag(std::move(e)) {
    if (diag.empty()) throw std::invalid_argument("SymTridiag: empty diagonal");
    if (offdiag.size() + 1 != diag.size())
      throw std::invalid_argument("SymTridiag: offdiag length must be n-1");
    for (double x : diag)
      if (!std::isfinite(x)) throw std::invalid_argument("SymTridiag: non-finite diagonal entry");
    for (double x : offdiag)
      if (!std::isfinite(x)) throw std::invalid_argument("SymTridiag: non-finite offdiag entry");
  }

  std::size_t size() const { return diag.size(); }

  std::vector<double> apply(const std::vector<double>& x) const {
    const std::size_t n = size();
    if (x.size() != n) throw std::invalid_argument("SymTridiag::apply: size mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag[i] * x[i];
      if (i > 0) s += offdiag[i - 1] * x[i - 1];
      if (i + 1 < n) s += offdiag[i] * x[i + 1];
      y[i] = s;
    }
    return y;
  }
};

/// Interpolation Hamiltonian restricted to the computational-path basis:
/// (L+1)x(L+1), diag = (s/2, 1, ..., 1, 1 - s/2), every off-diagonal -s/2.
/// Independent of the circuit's gates.
inline SymTridiag reduced_hamiltonian(int L, double s) {
  if (L < 1) throw std::invalid_argument("reduced_hamiltonian: L must be >= 1");
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("reduced_hamiltonian: s must be in [0,1]");
  std::vector<double> d(static_cast<std::size_t>(L) + 1, 1.0);
  d.front() = s / 2.0;
  d.back() = 1.0 - s / 2.0;
  std::vector<double> e(static_cast<std::size_t>(L), -s / 2.0);
  return SymTridiag(std::move(d), std::move(e));
}

/// Free-hopping matrix with perturbed corners: (L+1)x(L+1),
/// diag = (a, 0, ..., 0, b), unit off-diagonals.
inline SymTridiag t_matrix(int L, double a, double b) {
  if (L < 1) throw std::invalid_argument("t_matrix: L must be >= 1");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("t_matrix: corner entries must be finite");
  std::vector<double> d(static_cast<std::size_t>(L) + 1, 0.0);
  d.front() = a;
  d.back() = b;
  std::vector<double> e(static_cast<std::size_t>(L), 1.0);
  return SymTridiag(std::move(d), std::move(e));
}

struct Spectrum {
  std::vector<double> eigenvalues;                // ascending
  std::vector<std::vector<double>> eigenvectors;  // unit norm, same order; empty if not requested
};

namespace detail {

// Smallest admissible pivot magnitude for the Sturm recurrence.
inline double sturm_pivmin(std::span<const double> e) {
  double emax2 = 1.0;
  for (double x : e) emax2 = std::max(emax2, x * x);
  return std::numeric_limits<double>::min() * emax2;
}

// Number of eigenvalues of the tridiagonal block that are <= x, obtained by
// counting non-positive pivots of the LDL^T factorization of T - x I.
inline std::size_t sturm_count(std::span<const double> d, std::span<const double> e, double x,
                               double pivmin) {
  std::size_t count = 0;
  double t = d[0] - x;
  if (std::abs(t) <= pivmin) t = -pivmin;
  if (t <= 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    t = d[i] - x - e[i - 1] * e[i - 1] / t;
    if (std::abs(t) <= pivmin) t = -pivmin;
    if (t <= 0.0) ++count;
  }
  return count;
}

// Bisection for the k-th (0-based, ascending) eigenvalue of one block,
// bracketed by the Gerschgorin-style interval
// [min(diag) - 2 max|off|, max(diag) + 2 max|off|].
inline double bisect_eigenvalue(std::span<const double> d, std::span<const double> e,
                                std::size_t k) {
  double dmin = d[0], dmax = d[0], emax = 0.0;
  for (double x : d) {
    dmin = std::min(dmin, x);
    dmax = std::max(dmax, x);
  }
  for (double x : e) emax = std::max(emax, std::abs(x));
  const double pivmin = sturm_pivmin(e);
  const double pad = 2.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(dmin), std::abs(dmax) + 2.0 * emax) +
                     2.0 * pivmin;
  double lo = dmin - 2.0 * emax - pad;
  double hi = dmax + 2.0 * emax + pad;
  while (hi - lo > kBisectTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at rounding limit
    if (sturm_count(d, e, mid, pivmin) >= k + 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Partial-pivoting LU of the shifted tridiagonal T - lambda I.  Fill-in is
// confined to a second super-diagonal.  Zero pivots are replaced by a tiny
// value so that inverse iteration can proceed through (near-)singular shifts.
struct TriLU {
  std::vector<double> dl, dd, du, du2;
  std::vector<std::size_t> piv;
};

inline TriLU tri_factor(std::span<const double> d, std::span<const double> e, double lambda) {
  const std::size_t n = d.size();
  TriLU lu;
  lu.dd.resize(n);
  lu.dl.assign(n > 1 ? n - 1 : 0, 0.0);
  lu.du.assign(n > 1 ? n - 1 : 0, 0.0);
  lu.du2.assign(n > 2 ? n - 2 : 0, 0.0);
  lu.piv.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    lu.dd[i] = d[i] - lambda;
    lu.piv[i] = i;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    lu.dl[i] = e[i];
    lu.du[i] = e[i];
  }

  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(lu.dd[i]);
    if (i > 0) row += std::abs(e[i - 1]);
    if (i + 1 < n) row += std::abs(e[i]);
    anorm = std::max(anorm, row);
  }
  const double tiny =
      std::max(std::numeric_limits<double>::epsilon() * anorm, std::numeric_limits<double>::min());

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(lu.dd[i]) >= std::abs(lu.dl[i])) {
      if (lu.dd[i] == 0.0) lu.dd[i] = tiny;
      const double fact = lu.dl[i] / lu.dd[i];
      lu.dl[i] = fact;
      lu.dd[i + 1] -= fact * lu.du[i];
      if (i + 2 < n) lu.du2[i] = 0.0;
    } else {
      const double fact = lu.dd[i] / lu.dl[i];
      lu.dd[i] = lu.dl[i];
      lu.dl[i] = fact;
      const double temp = lu.du[i];
      lu.du[i] = lu.dd[i + 1];
      lu.dd[i + 1] = temp - fact * lu.dd[i + 1];
      if (i + 2 < n) {
        lu.du2[i] = lu.du[i + 1];
        lu.du[i + 1] = -fact * lu.du[i + 1];
      }
      lu.piv[i] = i + 1;
    }
  }
  if (lu.dd[n - 1] == 0.0) lu.dd[n - 1] = tiny;
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(lu.dd[i]) < tiny) lu.dd[i] = std::copysign(tiny, lu.dd[i]);
  return lu;
}

inline void tri_solve(const TriLU& lu, std::vector<double>& b) {
  const std::size_t n = lu.dd.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (lu.piv[i] == i) {
      b[i + 1] -= lu.dl[i] * b[i];
    } else {
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= lu.dl[i] * b[i];
    }
  }
  b[n - 1] /= lu.dd[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - lu.du[n - 2] * b[n - 1]) / lu.dd[n - 2];
  for (std::size_t i = n; i-- > 2;) {
    const std::size_t j = i - 2;
    b[j] = (b[j] - lu.du[j] * b[j + 1] - lu.du2[j] * b[j + 2]) / lu.dd[j];
  }
}

inline void orthogonalize_against(std::vector<double>& x,
                                  const std::vector<const std::vector<double>*>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto* u : basis) {
      const double c = dot(x, *u);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * (*u)[i];
    }
}

inline double block_residual(std::span<const double> d, std::span<const double> e,
                             const std::vector<double>& v, double lambda) {
  const std::size_t n = d.size();
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = (d[i] - lambda) * v[i];
    if (i > 0) s += e[i - 1] * v[i - 1];
    if (i + 1 < n) s += e[i] * v[i + 1];
    r2 += s * s;
  }
  return std::sqrt(r2);
}

// Shifted inverse iteration with reorthogonalization against the vectors
// already found in the same eigenvalue cluster.  Deterministic seeding;
// random restart if the iteration stalls.
inline std::vector<double> inverse_iteration(std::span<const double> d, std::span<const double> e,
                                             double lambda,
                                             const std::vector<const std::vector<double>*>& cluster,
                                             std::uint64_t seed) {
  const std::size_t n = d.size();
  if (n == 1) return {1.0};

  const TriLU lu = tri_factor(d, e, lambda);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto fresh = [&]() {
    std::vector<double> b(n);
    for (double& x : b) x = unit(rng);
    orthogonalize_against(b, cluster);
    const double nb = norm2(b);
    if (nb > 0.0)
      for (double& x : b) x /= nb;
    return b;
  };

  std::vector<double> b = fresh();
  std::vector<double> best;
  double best_res = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= kMaxInverseIters; ++iter) {
    std::vector<double> x = b;
    tri_solve(lu, x);
    orthogonalize_against(x, cluster);
    const double nx = norm2(x);
    if (!std::isfinite(nx) || nx == 0.0) {
      b = fresh();
      continue;
    }
    for (double& t : x) t /= nx;
    const double res = block_residual(d, e, x, lambda);
    if (res < best_res) {
      best_res = res;
      best = x;
    }
    b = std::move(x);
    if (iter >= 3 && best_res <= kResidualTol) return best;
    if (iter % 20 == 0) b = fresh();  // random restart
  }
  if (best_res <= kResidualTol) return best;
  throw std::runtime_error("inverse_iteration: residual " + std::to_string(best_res) +
                           " after " + std::to_string(kMaxInverseIters) + " steps");
}

struct Block {
  std::size_t begin, end;  // [begin, end)
};

// Exact zeros on the off-diagonal decouple the matrix; each block is solved
// independently (inverse iteration needs this at s = 0).
inline std::vector<Block> split_blocks(const SymTridiag& m) {
  std::vector<Block> blocks;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < m.offdiag.size(); ++i) {
    if (m.offdiag[i] == 0.0) {
      blocks.push_back({begin, i + 1});
      begin = i + 1;
    }
  }
  blocks.push_back({begin, m.size()});
  return blocks;
}

}  // namespace detail

/// k-th (0-based, ascending) eigenvalue by Sturm-count bisection on the whole
/// matrix, to absolute tolerance 1e-13.
inline double eigenvalue_by_index(const SymTridiag& m, std::size_t k) {
  if (k >= m.size()) throw std::invalid_argument("eigenvalue_by_index: index out of range");
  return detail::bisect_eigenvalue(std::span<const double>(m.diag),
                                   std::span<const double>(m.offdiag), k);
}

/// All eigenvalues (and optionally eigenvectors) by per-block Sturm bisection
/// plus shifted inverse iteration.  Eigenvalues ascend; eigenvectors are unit
/// norm with residual ||Mv - lambda v|| <= 1e-10, enforced.
inline Spectrum eigs_bisect(const SymTridiag& m, bool want_vectors = false) {
  const std::vector<detail::Block> blocks = detail::split_blocks(m);

  struct Item {
    double lambda;
    std::size_t block, k_in_block;
  };
  std::vector<Item> items;
  items.reserve(m.size());
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& blk = blocks[bi];
    const std::span<const double> d(m.diag.data() + blk.begin, blk.end - blk.begin);
    const std::span<const double> e(m.offdiag.data() + blk.begin,
                                    blk.end - blk.begin > 0 ? blk.end - blk.begin - 1 : 0);
    for (std::size_t k = 0; k < d.size(); ++k)
      items.push_back({detail::bisect_eigenvalue(d, e, k), bi, k});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.lambda < b.lambda; });

  Spectrum out;
  out.eigenvalues.reserve(items.size());
  for (const Item& it : items) out.eigenvalues.push_back(it.lambda);
  if (!want_vectors) return out;

  // Vectors are computed block by block in ascending order so that the
  // cluster reorthogonalization set is well defined.
  std::vector<std::vector<std::vector<double>>> block_vecs(blocks.size());
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& blk = blocks[bi];
    const std::span<const double> d(m.diag.data() + blk.begin, blk.end - blk.begin);
    const std::span<const double> e(m.offdiag.data() + blk.begin,
                                    blk.end - blk.begin > 0 ? blk.end - blk.begin - 1 : 0);
    std::vector<double> lambdas;
    for (const Item& it : items)
      if (it.block == bi) lambdas.push_back(it.lambda);
    std::sort(lambdas.begin(), lambdas.end());

    auto& vecs = block_vecs[bi];
    vecs.reserve(lambdas.size());
    std::size_t cluster_start = 0;
    std::vector<std::string> failures;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      if (k > 0 && lambdas[k] - lambdas[k - 1] > kClusterTol) cluster_start = k;
      std::vector<const std::vector<double>*> cluster;
      for (std::size_t j = cluster_start; j < k; ++j) cluster.push_back(&vecs[j]);
      try {
        vecs.push_back(detail::inverse_iteration(d, e, lambdas[k], cluster,
                                                 (bi << 20) ^ (k + 1)));
      } catch (const std::runtime_error& err) {
        failures.push_back("block " + std::to_string(bi) + " index " + std::to_string(k) + ": " +
                           err.what());
        vecs.emplace_back(d.size(), 0.0);
      }
    }
    if (!failures.empty()) {
      std::string msg = "eigs_bisect: eigenvector iteration failed";
      for (const auto& f : failures) msg += "; " + f;
      throw std::runtime_error(msg);
    }
  }

  std::vector<std::size_t> next_in_block(blocks.size(), 0);
  out.eigenvectors.reserve(items.size());
  for (const Item& it : items) {
    const auto& blk = blocks[it.block];
    const std::vector<double>& bv = block_vecs[it.block][next_in_block[it.block]++];
    std::vector<double> full(m.size(), 0.0);
    std::copy(bv.begin(), bv.end(), full.begin() + static_cast<std::ptrdiff_t>(blk.begin));
    out.eigenvectors.push_back(std::move(full));
  }
  return out;
}

/// Independent dense cross-check: expand to a dense symmetric matrix and run
/// cyclic Jacobi.  Restricted to n <= 512.
inline Spectrum eigs_dense_oracle(const SymTridiag& m) {
  const std::size_t n = m.size();
  if (n > 512) throw std::invalid_argument("eigs_dense_oracle: n must be <= 512");
  DenseSym a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = m.diag[i];
    if (i + 1 < n) {
      a(i, i + 1) = m.offdiag[i];
      a(i + 1, i) = m.offdiag[i];
    }
  }
  Spectrum out;
  out.eigenvalues = jacobi_eigs(std::move(a), /*want_vectors=*/false).eigenvalues;
  return out;
}

/// Lowest eigenpair only (cheaper than a full decomposition for gap scans).
inline std::pair<double, std::vector<double>> lowest_eigenpair(const SymTridiag& m) {
  const std::vector<detail::Block> blocks = detail::split_blocks(m);
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_block = 0;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& blk = blocks[bi];
    const std::span<const double> d(m.diag.data() + blk.begin, blk.end - blk.begin);
    const std::span<const double> e(m.offdiag.data() + blk.begin,
                                    blk.end - blk.begin > 0 ? blk.end - blk.begin - 1 : 0);
    const double lam = detail::bisect_eigenvalue(d, e, 0);
    if (lam < best) {
      best = lam;
      best_block = bi;
    }
  }
  const auto& blk = blocks[best_block];
  const std::span<const double> d(m.diag.data() + blk.begin, blk.end - blk.begin);
  const std::span<const double> e(m.offdiag.data() + blk.begin,
                                  blk.end - blk.begin > 0 ? blk.end - blk.begin - 1 : 0);
  const std::vector<double> bv = detail::inverse_iteration(d, e, best, {}, best_block + 17);
  std::vector<double> full(m.size(), 0.0);
  std::copy(bv.begin(), bv.end(), full.begin() + static_cast<std::ptrdiff_t>(blk.begin));
  return {best, std::move(full)};
}

/// Closed-form spectrum of t_matrix(L, -1, 1): 2 cos((2j+1) pi / (2L+2)) for
/// j = 0..L, returned ascending.
inline std::vector<double> t_minus11_eigs(int L) {
  if (L < 1) throw std::invalid_argument("t_minus11_eigs: L must be >= 1");
  const double eps = M_PI / (2.0 * L + 2.0);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(L) + 1);
  for (int j = L; j >= 0; --j) out.push_back(2.0 * std::cos((2.0 * j + 1.0) * eps));
  return out;
}

/// Closed-form spectrum of t_matrix(L, q, 1/q) for q > 1:
/// {2 cos(2 j pi / (2L+2)), j = 1..L} together with q + 1/q (the largest),
/// returned ascending.
inline std::vector<double> t_q_eigs(int L, double q) {
  if (L < 1) throw std::invalid_argument("t_q_eigs: L must be >= 1");
  if (!(q > 1.0)) throw std::invalid_argument("t_q_eigs: q must be > 1");
  const double eps = M_PI / (2.0 * L + 2.0);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(L) + 1);
  for (int j = L; j >= 1; --j) out.push_back(2.0 * std::cos(2.0 * j * eps));
  out.push_back(q + 1.0 / q);
  return out;
}

}  // namespace clockgap
