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
#include <utility>
#include <vector>

namespace clockgap {

/// Golden-section search for a minimum of f on [a, b], assuming f is
/// unimodal there.  Shrinks the bracket until its width is at most xtol and
/// returns (x_min, f(x_min)).
template <class F>
std::pair<double, double> golden_section(F&& f, double a, double b, double xtol) {
  if (!(a < b)) throw std::invalid_argument("golden_section: empty interval");
  if (!(xtol > 0.0)) throw std::invalid_argument("golden_section: xtol must be > 0");
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

/// Minimize f on [a, b] by an n-point uniform scan followed by golden-section
/// refinement of the cell around the best grid point.  Unimodality is not
/// assumed a priori: every strict local minimum of the grid values (dipping
/// below both neighbors by more than noise_floor) is counted, and more than
/// one such dip is reported as an error, since the refinement strategy is
/// only valid for single-valley functions.
template <class F>
std::pair<double, double> grid_then_golden(F&& f, double a, double b, std::size_t n, double xtol,
                                           double noise_floor = 1e-12) {
  if (n < 3) throw std::invalid_argument("grid_then_golden: need at least 3 grid points");
  if (!(a < b)) throw std::invalid_argument("grid_then_golden: empty interval");
  std::vector<double> xs(n), fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    fs[i] = f(xs[i]);
  }
  std::size_t dips = 0, best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (fs[i] < fs[best]) best = i;
    const bool left_up = (i == 0) || fs[i - 1] > fs[i] + noise_floor;
    const bool right_up = (i + 1 == n) || fs[i + 1] > fs[i] + noise_floor;
    const bool left_flat = (i > 0) && std::abs(fs[i - 1] - fs[i]) <= noise_floor;
    if (left_up && right_up && !left_flat) ++dips;
  }
  if (dips > 1)
    throw std::runtime_error("grid_then_golden: " + std::to_string(dips) +
                             " separated local minima; function is not unimodal");
  const double lo = xs[best == 0 ? 0 : best - 1];
  const double hi = xs[best + 1 >= n ? n - 1 : best + 1];
  auto refined = golden_section(f, lo, hi, xtol);
  if (fs[best] < refined.second) return {xs[best], fs[best]};
  return refined;
}

}  // namespace clockgap
