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
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace clockgap {

/// Pole spacing of the oscillatory branch: eps = pi / (2L + 2).  Also the
/// angle controlling the leading-order gap bound eps^2 / 2.
inline double epsilon_angle(int L) {
  if (L < 1) throw std::invalid_argument("epsilon_angle: L must be >= 1");
  return M_PI / (2.0 * static_cast<double>(L) + 2.0);
}

enum class Branch { Real, Complex };

/// One root of a branch equation f(theta) = s.  The Real branch carries the
/// ground level (l = 0, theta on (0, inf), +inf sentinel at s = 0); the
/// Complex branch carries level l in 1..L with theta between two poles.
struct BranchSolution {
  Branch branch;
  int l;
  double theta;
  double s;
  int L;
};

namespace detail {

inline void check_sl(int L, double s, const char* what) {
  if (L < 1) throw std::invalid_argument(std::string(what) + ": L must be >= 1");
  if (!(s >= 0.0 && s <= 1.0))
    throw std::domain_error(std::string(what) + ": s must lie in [0,1]");
}

}  // namespace detail

/// Monotone-decreasing branch function 1 - tanh((L+1)theta) tanh(theta/2),
/// mapping (0, inf) onto (0, 1).  Beyond theta = 30 both tanh factors sit on
/// their rounding plateaus, so the asymptotic tail 2 e^{-theta} is used to
/// keep the function strictly decreasing for bracketing.
inline double f_real(int L, double theta) {
  if (L < 1) throw std::invalid_argument("f_real: L must be >= 1");
  if (!(theta > 0.0)) throw std::domain_error("f_real: theta must be > 0");
  if (theta > 30.0) return 2.0 * std::exp(-theta);
  return 1.0 - std::tanh((L + 1.0) * theta) * std::tanh(0.5 * theta);
}

/// Oscillatory branch function 1 + tan((L+1)theta) tan(theta/2) on (0, pi),
/// diverging at theta = (2l-1) eps.  Strictly increasing between poles.
inline double f_complex(int L, double theta) {
  if (L < 1) throw std::invalid_argument("f_complex: L must be >= 1");
  if (!(theta > 0.0 && theta < M_PI))
    throw std::domain_error("f_complex: theta must lie in (0, pi)");
  const double eps = epsilon_angle(L);
  const long long nearest = std::llround(theta / eps);
  if (nearest % 2 != 0 && std::abs(theta - nearest * eps) < 1e-14)
    throw std::domain_error("f_complex: theta within 1e-14 of a pole");
  return 1.0 + std::tan((L + 1.0) * theta) * std::tan(0.5 * theta);
}

namespace detail {

inline double f_real_derivative(int L, double theta) {
  if (theta > 30.0) return -2.0 * std::exp(-theta);
  const double a = (L + 1.0) * theta;
  const double ca = std::cosh(a), cb = std::cosh(0.5 * theta);
  const double sech2a = 1.0 / (ca * ca), sech2b = 1.0 / (cb * cb);
  return -((L + 1.0) * sech2a * std::tanh(0.5 * theta) +
           std::tanh(a) * 0.5 * sech2b);
}

inline double f_complex_derivative(int L, double theta) {
  const double ta = std::tan((L + 1.0) * theta), tb = std::tan(0.5 * theta);
  return (L + 1.0) * (1.0 + ta * ta) * tb + ta * 0.5 * (1.0 + tb * tb);
}

}  // namespace detail

/// The unique theta_0 >= 0 with f_real(theta_0) = s.  Bisection to 1e-13 in
/// theta, then two guarded Newton polish steps; the s = 0 limit is returned
/// as a +inf sentinel (the root runs off to infinity) and s = 1 as theta = 0.
inline BranchSolution solve_real_branch(int L, double s) {
  detail::check_sl(L, s, "solve_real_branch");
  if (s == 0.0)
    return {Branch::Real, 0, std::numeric_limits<double>::infinity(), s, L};
  if (s == 1.0) return {Branch::Real, 0, 0.0, s, L};

  double lo = 0.0, hi = 1.0;  // f(0+) = 1 > s
  while (f_real(L, hi) > s) {
    hi *= 2.0;
    if (hi > 2048.0)
      throw std::runtime_error("solve_real_branch: bracket expansion failed at s=" +
                               std::to_string(s));
  }
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at rounding limit
    (f_real(L, mid) > s ? lo : hi) = mid;
  }
  double theta = 0.5 * (lo + hi);
  for (int k = 0; k < 2; ++k) {
    const double fp = detail::f_real_derivative(L, theta);
    if (!std::isfinite(fp) || fp == 0.0) break;
    const double cand = theta - (f_real(L, theta) - s) / fp;
    if (!(cand > 0.0) || !std::isfinite(cand)) break;
    if (std::abs(f_real(L, cand) - s) < std::abs(f_real(L, theta) - s)) theta = cand;
  }
  const double resid = std::abs(f_real(L, theta) - s);
  if (resid > 1e-12)
    throw std::runtime_error("solve_real_branch: residual " + std::to_string(resid) +
                             " at L=" + std::to_string(L) + " s=" + std::to_string(s));
  return {Branch::Real, 0, theta, s, L};
}

/// The unique root of f_complex(theta) = s between the poles (2l-1) eps and
/// (2l+1) eps.  Brackets are shrunk inward by 1e-9 of their width before
/// evaluation to stay clear of the tan poles; a sign change is asserted, the
/// root is bisected to 1e-13 and polished with two guarded Newton steps.
/// Endpoints short-circuit: s = 1 gives theta = l pi/(L+1) exactly, s = 0
/// the pole-adjacent limit theta = (2l-1) eps with eigenvalue 1.
inline BranchSolution solve_complex_branch(int L, int l, double s) {
  detail::check_sl(L, s, "solve_complex_branch");
  if (l < 1 || l > L)
    throw std::invalid_argument("solve_complex_branch: l must lie in 1.." + std::to_string(L));
  const double eps = epsilon_angle(L);
  if (s == 1.0) return {Branch::Complex, l, l * M_PI / (L + 1.0), s, L};
  if (s == 0.0) return {Branch::Complex, l, (2.0 * l - 1.0) * eps, s, L};

  const double width = 2.0 * eps;
  double lo = (2.0 * l - 1.0) * eps + 1e-9 * width;
  double hi = (2.0 * l + 1.0) * eps - 1e-9 * width;
  const double flo = f_complex(L, lo), fhi = f_complex(L, hi);
  if (!(flo <= s && s <= fhi))
    throw std::runtime_error("solve_complex_branch: no sign change on bracket: L=" +
                             std::to_string(L) + " l=" + std::to_string(l) +
                             " s=" + std::to_string(s) + " f(lo)=" + std::to_string(flo) +
                             " f(hi)=" + std::to_string(fhi));
  const double blo = lo, bhi = hi;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f_complex(L, mid) < s ? lo : hi) = mid;
  }
  double theta = 0.5 * (lo + hi);
  for (int k = 0; k < 2; ++k) {
    const double fp = detail::f_complex_derivative(L, theta);
    if (!std::isfinite(fp) || fp <= 0.0) break;
    const double cand = theta - (f_complex(L, theta) - s) / fp;
    if (!(cand > blo && cand < bhi)) break;
    if (std::abs(f_complex(L, cand) - s) < std::abs(f_complex(L, theta) - s)) theta = cand;
  }
  const double resid = std::abs(f_complex(L, theta) - s);
  if (resid > 1e-10)
    throw std::runtime_error("solve_complex_branch: residual " + std::to_string(resid) +
                             " at L=" + std::to_string(L) + " l=" + std::to_string(l) +
                             " s=" + std::to_string(s));
  return {Branch::Complex, l, theta, s, L};
}

/// Unnormalized closed-form eigenvector: [psi]_k = cosh[(L-k+1/2) theta] on
/// the real branch, cos[(L-k+1/2) theta] on the complex branch, k = 0..L.
/// The s = 0 real sentinel (theta = inf) returns the basis vector e_0, the
/// limit of the normalized form.
inline std::vector<double> ansatz_eigenvector(const BranchSolution& sol) {
  if (sol.L < 1) throw std::invalid_argument("ansatz_eigenvector: L must be >= 1");
  if (!(sol.theta >= 0.0)) throw std::invalid_argument("ansatz_eigenvector: theta must be >= 0");
  const std::size_t n = static_cast<std::size_t>(sol.L) + 1;
  std::vector<double> psi(n);
  if (sol.branch == Branch::Real && std::isinf(sol.theta)) {
    psi.assign(n, 0.0);
    psi[0] = 1.0;
    return psi;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double p = (sol.L - static_cast<double>(k) + 0.5) * sol.theta;
    psi[k] = (sol.branch == Branch::Real) ? std::cosh(p) : std::cos(p);
  }
  return psi;
}

/// Closed-form ground-eigenvalue estimate s(1-s)/(2-s); an upper bound on
/// the exact lambda_0(s), tight as L grows.
inline double lambda0_approx(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("lambda0_approx: s must lie in [0,1]");
  return s * (1.0 - s) / (2.0 - s);
}

/// Closed-form ground-eigenvector estimate with base b = 2/s - 1:
/// [psi_0]_k = (b^{L-k+1/2} + b^{-(L-k+1/2)}) / 2.  Endpoints: s = 0 is the
/// divergent-base limit e_0; s = 1 the uniform vector of ones.
inline std::vector<double> psi0_approx(int L, double s) {
  detail::check_sl(L, s, "psi0_approx");
  const std::size_t n = static_cast<std::size_t>(L) + 1;
  std::vector<double> psi(n, 1.0);
  if (s == 1.0) return psi;
  if (s == 0.0) {
    psi.assign(n, 0.0);
    psi[0] = 1.0;
    return psi;
  }
  const double b = 2.0 / s - 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = L - static_cast<double>(k) + 0.5;
    psi[k] = 0.5 * (std::pow(b, p) + std::pow(b, -p));
  }
  return psi;
}

/// Combined excited-level angle estimate:
/// max{ (2l-1) pi/(2L+2),  l pi/(L+1) - (1-s) / [(L+1) tan(l pi/(2L+2))] }.
inline double theta_l_approx(int L, int l, double s) {
  detail::check_sl(L, s, "theta_l_approx");
  if (l < 1 || l > L)
    throw std::invalid_argument("theta_l_approx: l must lie in 1.." + std::to_string(L));
  const double first = (2.0 * l - 1.0) * M_PI / (2.0 * L + 2.0);
  const double second =
      l * M_PI / (L + 1.0) - (1.0 - s) / ((L + 1.0) * std::tan(l * M_PI / (2.0 * L + 2.0)));
  return std::max(first, second);
}

/// The complete branch-solution family for one (L, s): the real root plus
/// the L complex roots, with eigenvalues lambda_0 = 1 - s cosh(theta_0) and
/// lambda_l = 1 - s cos(theta_l), ascending, and the unnormalized
/// closed-form eigenvectors.  s = 0 short-circuits to the diagonal endpoint
/// (eigenvalues 0, 1, ..., 1; basis eigenvectors).
struct AnsatzSpectrum {
  std::vector<BranchSolution> solutions;
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
};

inline AnsatzSpectrum full_ansatz_spectrum(int L, double s) {
  detail::check_sl(L, s, "full_ansatz_spectrum");
  AnsatzSpectrum out;
  const std::size_t n = static_cast<std::size_t>(L) + 1;
  out.solutions.reserve(n);
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);

  if (s == 0.0) {
    // Diagonal endpoint: the reduced matrix is diag(0, 1, ..., 1) and the
    // closed forms degenerate (theta_0 -> inf, complex roots at the poles).
    out.solutions.push_back(solve_real_branch(L, 0.0));
    out.eigenvalues.push_back(0.0);
    for (int l = 1; l <= L; ++l) {
      out.solutions.push_back(solve_complex_branch(L, l, 0.0));
      out.eigenvalues.push_back(1.0);
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> e(n, 0.0);
      e[k] = 1.0;
      out.eigenvectors.push_back(std::move(e));
    }
    return out;
  }

  out.solutions.push_back(solve_real_branch(L, s));
  out.eigenvalues.push_back(1.0 - s * std::cosh(out.solutions[0].theta));
  out.eigenvectors.push_back(ansatz_eigenvector(out.solutions[0]));
  for (int l = 1; l <= L; ++l) {
    out.solutions.push_back(solve_complex_branch(L, l, s));
    out.eigenvalues.push_back(1.0 - s * std::cos(out.solutions.back().theta));
    out.eigenvectors.push_back(ansatz_eigenvector(out.solutions.back()));
  }
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (out.eigenvalues[k] > out.eigenvalues[k + 1] + 1e-12)
      throw std::runtime_error("full_ansatz_spectrum: eigenvalues not ascending at level " +
                               std::to_string(k) + " (L=" + std::to_string(L) +
                               ", s=" + std::to_string(s) + ")");
  return out;
}

}  // namespace clockgap
