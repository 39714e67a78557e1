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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clockgap/ansatz.hpp"
#include "clockgap/optimize.hpp"
#include "clockgap/tridiag.hpp"

namespace clockgap {

/// Weyl's two-sided eigenvalue perturbation estimate: for Hermitian A, B
/// with ascending eigenvalue lists, the k-th eigenvalue of A + B lies in
/// [mu_k(A) + mu_min(B), mu_k(A) + mu_max(B)].
inline std::pair<double, double> weyl_sandwich(const std::vector<double>& eigs_a,
                                               const std::vector<double>& eigs_b, std::size_t k) {
  if (eigs_a.empty() || eigs_a.size() != eigs_b.size())
    throw std::invalid_argument("weyl_sandwich: eigenvalue lists must be equal-length, non-empty");
  if (k >= eigs_a.size()) throw std::invalid_argument("weyl_sandwich: index out of range");
  return {eigs_a[k] + eigs_b.front(), eigs_a[k] + eigs_b.back()};
}

/// First-excited-level floor 1 - s cos(eps): drop the rank-one attractive
/// corner of the reduced matrix and keep the second-smallest eigenvalue of
/// what remains.
inline double lambda1_lower(int L, double s) {
  if (L < 1) throw std::invalid_argument("lambda1_lower: L must be >= 1");
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("lambda1_lower: s must lie in [0,1]");
  return 1.0 - s * std::cos(epsilon_angle(L));
}

/// Ground-level ceiling s(1-s)/(2-s): split off the positive-semidefinite
/// rank-one corner and keep the smallest eigenvalue of what remains.  Equals
/// lambda0_approx by construction.
inline double lambda0_upper(int L, double s) {
  if (L < 1) throw std::invalid_argument("lambda0_upper: L must be >= 1");
  return lambda0_approx(s);
}

/// Entrywise residuals of the two rank-one splittings of the reduced matrix
/// H(s), with e_0/e_L standing in for the first/last path states:
///   (1)  H(s) = I - (s/2) T(-1,1) - e_0 e_0^T
///   (2)  H(s) = I - (s/2) T(q,1/q) - [s(s-1)/(2-s)] e_L e_L^T,  q = 2/s - 1.
/// The subtracted term in (2) is -B with B = [s(1-s)/(2-s)] e_L e_L^T
/// positive semidefinite (coefficient >= 0 on [0,1]; asserted).  At s = 0
/// the q-scaled entries are evaluated in their finite limit ((s/2)q -> 1,
/// (s/2)/q -> 0) so the identity remains checkable at both endpoints.
inline std::pair<double, double> verify_decompositions(int L, double s) {
  if (L < 1) throw std::invalid_argument("verify_decompositions: L must be >= 1");
  if (!(s >= 0.0 && s <= 1.0))
    throw std::domain_error("verify_decompositions: s must lie in [0,1]");
  const SymTridiag h = reduced_hamiltonian(L, s);
  const std::size_t n = h.size();

  const SymTridiag t = t_matrix(L, -1.0, 1.0);
  double res1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double want = 1.0 - 0.5 * s * t.diag[i];
    if (i == 0) want -= 1.0;
    res1 = std::max(res1, std::abs(h.diag[i] - want));
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    res1 = std::max(res1, std::abs(h.offdiag[i] - (-0.5 * s * t.offdiag[i])));

  // (s/2) T(q, 1/q) has corner entries (s/2)q and (s/2)/q; form them
  // directly so the s -> 0 limit stays finite.
  const double sq_half = 0.5 * (2.0 - s);            // (s/2) q
  const double s_over_2q = 0.5 * s * s / (2.0 - s);  // (s/2) / q
  const double b_coef = s * (1.0 - s) / (2.0 - s);
  if (!(b_coef >= 0.0))
    throw std::logic_error("verify_decompositions: rank-one term not positive semidefinite");
  double res2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double want = 1.0;
    if (i == 0) want = 1.0 - sq_half;
    if (i + 1 == n) want = 1.0 - s_over_2q - b_coef;
    res2 = std::max(res2, std::abs(h.diag[i] - want));
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    res2 = std::max(res2, std::abs(h.offdiag[i] - (-0.5 * s)));
  return {res1, res2};
}

/// Pointwise gap floor Delta(s) >= 1 - s cos(eps) - s(1-s)/(2-s).
inline double gap_lower_curve(int L, double s) { return lambda1_lower(L, s) - lambda0_upper(L, s); }

/// Minimum over s of the gap floor, in closed form:
/// 2 sqrt(2[1+cos eps]) - 2[1+cos eps], with leading order eps^2/2.
struct ClosedFormBound {
  double value;
  double leading_order;
};

inline ClosedFormBound min_gap_bound_closed(int L) {
  const double eps = epsilon_angle(L);
  const double c = 1.0 + std::cos(eps);
  return {2.0 * std::sqrt(2.0 * c) - 2.0 * c, 0.5 * eps * eps};
}

/// Numerically exact minimum of the true gap lambda_1(s) - lambda_0(s) over
/// s in [0,1]: 1001-point scan, then golden-section refinement to 1e-10.
struct GapMinimum {
  double s_star;
  double gap;
};

inline GapMinimum min_gap_exact(int L) {
  if (L < 1) throw std::invalid_argument("min_gap_exact: L must be >= 1");
  auto gap = [L](double s) {
    const SymTridiag m = reduced_hamiltonian(L, s);
    return eigenvalue_by_index(m, 1) - eigenvalue_by_index(m, 0);
  };
  const auto [s_star, value] = grid_then_golden(gap, 0.0, 1.0, 1001, 1e-10);
  return {s_star, value};
}

/// Hard-coded prior gap bounds used as comparison targets.
inline double aharonov_bound(int L) {
  if (L < 1) throw std::invalid_argument("aharonov_bound: L must be >= 1");
  return 1.0 / (144.0 * static_cast<double>(L) * L);
}

inline double deift_bound(int L) {
  if (L < 1) throw std::invalid_argument("deift_bound: L must be >= 1");
  return 0.5 / (static_cast<double>(L + 1) * (L + 1));
}

/// One row of the per-s diagnostic table: exact levels, gap, and the two
/// closed-form bounds at that s.
struct GapRow {
  double s;
  double lambda0;
  double lambda1;
  double gap;
  double lambda0_ub;
  double lambda1_lb;
};

/// Full gap study for one L: exact minimum, closed-form bound, prior bounds
/// with comparison ratios, and the per-s table.
struct GapReport {
  int L = 0;
  double epsilon = 0.0;
  double min_gap_exact = 0.0;
  double s_star = 0.0;
  double bound_closed_form = 0.0;
  double bound_leading_order = 0.0;
  double aharonov_bound = 0.0;
  double deift_bound = 0.0;
  double ratio_aharonov = 0.0;  // bound_closed_form / aharonov_bound -> 18 pi^2
  double ratio_deift = 0.0;     // bound_closed_form / deift_bound -> pi^2 / 4
  std::vector<GapRow> table;
};

inline GapReport compare_prior_bounds(int L, std::size_t table_points = 41) {
  if (L < 1) throw std::invalid_argument("compare_prior_bounds: L must be >= 1");
  if (table_points < 2) throw std::invalid_argument("compare_prior_bounds: need >= 2 table rows");
  GapReport r;
  r.L = L;
  r.epsilon = epsilon_angle(L);
  const GapMinimum mg = min_gap_exact(L);
  r.min_gap_exact = mg.gap;
  r.s_star = mg.s_star;
  const ClosedFormBound cf = min_gap_bound_closed(L);
  r.bound_closed_form = cf.value;
  r.bound_leading_order = cf.leading_order;
  r.aharonov_bound = clockgap::aharonov_bound(L);
  r.deift_bound = clockgap::deift_bound(L);
  r.ratio_aharonov = r.bound_closed_form / r.aharonov_bound;
  r.ratio_deift = r.bound_closed_form / r.deift_bound;
  r.table.reserve(table_points);
  for (std::size_t i = 0; i < table_points; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(table_points - 1);
    const SymTridiag m = reduced_hamiltonian(L, s);
    GapRow row;
    row.s = s;
    row.lambda0 = eigenvalue_by_index(m, 0);
    row.lambda1 = eigenvalue_by_index(m, 1);
    row.gap = row.lambda1 - row.lambda0;
    row.lambda0_ub = lambda0_upper(L, s);
    row.lambda1_lb = lambda1_lower(L, s);
    r.table.push_back(row);
  }
  return r;
}

/// Check every inequality a GapReport asserts; throw with the failing (s, L)
/// on violation.  Slack 2e-12 absorbs eigensolver tolerance on exact values;
/// closed-form comparisons are exact.
inline void validate_gap_report(const GapReport& r) {
  const auto fail = [&](const std::string& what, double s) {
    throw std::runtime_error("gap report invariant failed: " + what + " at L=" +
                             std::to_string(r.L) + " s=" + std::to_string(s));
  };
  if (r.min_gap_exact < r.bound_closed_form - 2e-12)
    fail("min gap below closed-form bound", r.s_star);
  if (r.bound_closed_form < r.aharonov_bound) fail("closed-form bound below 1/(144 L^2)", 0.0);
  if (r.bound_closed_form < r.deift_bound) fail("closed-form bound below 1/(2 (L+1)^2)", 0.0);
  for (const GapRow& row : r.table) {
    if (row.lambda0 > row.lambda0_ub + 1e-12) fail("ground level above its ceiling", row.s);
    if (row.lambda1 < row.lambda1_lb - 1e-12) fail("first excited level below its floor", row.s);
    if (row.gap < gap_lower_curve(r.L, row.s) - 2e-12) fail("gap below its floor curve", row.s);
  }
}

}  // namespace clockgap
