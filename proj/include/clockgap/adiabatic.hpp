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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clockgap/circuit.hpp"
#include "clockgap/clock.hpp"
#include "clockgap/tridiag.hpp"
#include "clockgap/vec.hpp"

namespace clockgap {

/// Linear-ramp time grid: s(t) = t/T, integrated with a fixed step T/steps.
struct Schedule {
  double total_time;
  long long steps;

  Schedule(double T, long long n) : total_time(T), steps(n) {
    if (!std::isfinite(T) || !(T > 0.0))
      throw std::invalid_argument("schedule: total time must be positive and finite");
    if (n < 1) throw std::invalid_argument("schedule: need at least one step");
  }

  /// Default step rule: steps = ceil(200 T).
  static Schedule with_default_steps(double T) {
    if (!std::isfinite(T) || !(T > 0.0))
      throw std::invalid_argument("schedule: total time must be positive and finite");
    const double n = std::ceil(200.0 * T);
    return Schedule(T, std::max(1LL, static_cast<long long>(n)));
  }

  double s_at(double t) const { return std::clamp(t / total_time, 0.0, 1.0); }
};

struct TraceSample {
  double t;
  double s;
  double overlap;  // |<ground(s)|psi>|^2
  double leakage;  // ||(I - P_path) psi||; zero by construction in reduced runs
  double norm;
};

struct SimulationTrace {
  std::vector<TraceSample> samples;
  double final_overlap = 0.0;
  double p_clock_final = 0.0;      // projector-expectation route
  double p_clock_final_amp = 0.0;  // summed-amplitude route
  double final_fidelity = 0.0;     // |<alpha(L)|psi_logical>|^2 conditioned on clock = L
  double max_norm_drift = 0.0;
};

namespace detail {

inline constexpr long long kTraceIntervals = 2000;
inline constexpr double kNormDriftLimit = 1e-4;

/// Flip the freshly computed ground state to match the previous sample's (or,
/// at the first sample, to make its largest component positive), then store
/// it as the new reference.  Keeps overlap traces free of sign flips.
inline void align_ground_state(std::vector<double>& gs, std::vector<double>& prev) {
  if (prev.empty()) {
    std::size_t imax = 0;
    for (std::size_t i = 1; i < gs.size(); ++i)
      if (std::abs(gs[i]) > std::abs(gs[imax])) imax = i;
    if (gs[imax] < 0.0)
      for (double& x : gs) x = -x;
  } else if (dot(prev, gs) < 0.0) {
    for (double& x : gs) x = -x;
  }
  prev = gs;
}

/// Classical fixed-step RK4 for i dpsi/dt = H(s(t)) psi.  apply_h(s, x, y)
/// writes H(s) x into y; on_sample(t, s, psi, norm) fires at t = 0, every
/// ~steps/2000 steps, and at t = T.  Returns the largest | ||psi|| - 1 |
/// observed after any step; drift beyond 1e-4 aborts the run.
template <class ApplyH, class SampleFn>
double integrate_schrodinger(ApplyH&& apply_h, const Schedule& sched, std::vector<cplx>& psi,
                             SampleFn&& on_sample) {
  const std::size_t n = psi.size();
  const double h = sched.total_time / static_cast<double>(sched.steps);
  const long long stride = std::max(1LL, sched.steps / kTraceIntervals);
  std::vector<cplx> k1(n), k2(n), k3(n), k4(n), stage(n), hx(n);

  const auto rhs = [&](double t, const std::vector<cplx>& x, std::vector<cplx>& k) {
    apply_h(sched.s_at(t), x, hx);
    for (std::size_t i = 0; i < n; ++i) k[i] = cplx(hx[i].imag(), -hx[i].real());  // -i H x
  };

  double max_drift = std::abs(cnorm2(psi) - 1.0);
  on_sample(0.0, 0.0, psi, cnorm2(psi));
  for (long long step = 0; step < sched.steps; ++step) {
    const double t = h * static_cast<double>(step);
    rhs(t, psi, k1);
    for (std::size_t i = 0; i < n; ++i) stage[i] = psi[i] + 0.5 * h * k1[i];
    rhs(t + 0.5 * h, stage, k2);
    for (std::size_t i = 0; i < n; ++i) stage[i] = psi[i] + 0.5 * h * k2[i];
    rhs(t + 0.5 * h, stage, k3);
    for (std::size_t i = 0; i < n; ++i) stage[i] = psi[i] + h * k3[i];
    rhs(t + h, stage, k4);
    for (std::size_t i = 0; i < n; ++i)
      psi[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    const double nrm = cnorm2(psi);
    max_drift = std::max(max_drift, std::abs(nrm - 1.0));
    if (max_drift > kNormDriftLimit)
      throw std::runtime_error("time evolution: norm drift " + std::to_string(max_drift) +
                               " after step " + std::to_string(step + 1) +
                               " exceeds 1e-4; increase the schedule's step count");
    const long long done = step + 1;
    if (done == sched.steps || done % stride == 0) {
      const double tt = (done == sched.steps) ? sched.total_time : h * static_cast<double>(done);
      on_sample(tt, sched.s_at(tt), psi, nrm);
    }
  }
  return max_drift;
}

/// H(s) in path coordinates — diag (s/2, 1, ..., 1, 1-s/2), off-diagonal
/// -s/2 — applied on the fly to a complex vector.
inline auto reduced_apply(std::size_t n) {
  return [n](double s, const std::vector<cplx>& x, std::vector<cplx>& y) {
    const double e = -0.5 * s;
    for (std::size_t i = 0; i < n; ++i) {
      double d = 1.0;
      if (i == 0) d = 0.5 * s;
      if (i + 1 == n) d = 1.0 - 0.5 * s;
      cplx acc = d * x[i];
      if (i > 0) acc += e * x[i - 1];
      if (i + 1 < n) acc += e * x[i + 1];
      y[i] = acc;
    }
  };
}

}  // namespace detail

/// Integrate the interpolation in the (L+1)-dimensional path coordinates from
/// psi(0) = e_0.  Leakage is identically zero here; the conditioned logical
/// fidelity is 1 by construction (the clock-L coordinate multiplies the exact
/// circuit output).
inline SimulationTrace evolve_reduced(int L, const Schedule& sched) {
  if (L < 1) throw std::invalid_argument("evolve_reduced: L must be >= 1");
  const std::size_t n = static_cast<std::size_t>(L) + 1;
  std::vector<cplx> psi(n, 0.0);
  psi[0] = 1.0;

  SimulationTrace trace;
  std::vector<double> prev_gs;
  const auto apply_h = detail::reduced_apply(n);
  const auto on_sample = [&](double t, double s, const std::vector<cplx>& p, double nrm) {
    auto eigenpair = lowest_eigenpair(reduced_hamiltonian(L, s));
    detail::align_ground_state(eigenpair.second, prev_gs);
    cplx amp = 0.0;
    for (std::size_t i = 0; i < n; ++i) amp += eigenpair.second[i] * p[i];
    trace.samples.push_back({t, s, std::norm(amp), 0.0, nrm});
  };

  trace.max_norm_drift = detail::integrate_schrodinger(apply_h, sched, psi, on_sample);
  trace.final_overlap = trace.samples.back().overlap;
  const double p_final = std::norm(psi.back());
  trace.p_clock_final = p_final;
  trace.p_clock_final_amp = p_final;
  trace.final_fidelity = 1.0;
  return trace;
}

/// Integrate in the full clock (x) logical space from gamma(0).  Tracks
/// leakage out of the path subspace, measures the clock-at-L probability two
/// independent ways, and conditions the final logical state on that outcome.
inline SimulationTrace evolve_full(const Circuit& c, const Schedule& sched) {
  const int L = c.length();
  const std::size_t logical = std::size_t{1} << c.n_qubits;
  const std::size_t dim = static_cast<std::size_t>(L + 1) * logical;
  if (dim > 4096)
    throw std::invalid_argument("evolve_full: composite dimension " + std::to_string(dim) +
                                " exceeds the cap of 4096");
  const SparseHermitian h_init = build_h_init(c);
  const SparseHermitian h_final = build_h_final(c);
  const PathBasis basis = path_basis(c);
  std::vector<cplx> psi = basis.gammas[0].amplitudes;

  SimulationTrace trace;
  std::vector<double> prev_gs;
  std::vector<cplx> coeffs(static_cast<std::size_t>(L) + 1);
  const auto apply_h = [&](double s, const std::vector<cplx>& x, std::vector<cplx>& y) {
    const std::vector<cplx> a = h_init.apply(x);
    const std::vector<cplx> b = h_final.apply(x);
    for (std::size_t i = 0; i < dim; ++i) y[i] = (1.0 - s) * a[i] + s * b[i];
  };
  const auto on_sample = [&](double t, double s, const std::vector<cplx>& p, double nrm) {
    auto eigenpair = lowest_eigenpair(reduced_hamiltonian(L, s));
    detail::align_ground_state(eigenpair.second, prev_gs);
    cplx amp = 0.0;
    for (std::size_t l = 0; l < coeffs.size(); ++l) {
      coeffs[l] = cdot(basis.gammas[l].amplitudes, p);
      amp += eigenpair.second[l] * coeffs[l];
    }
    std::vector<cplx> outside = p;
    for (std::size_t l = 0; l < coeffs.size(); ++l)
      for (std::size_t i = 0; i < dim; ++i) outside[i] -= coeffs[l] * basis.gammas[l].amplitudes[i];
    trace.samples.push_back({t, s, std::norm(amp), cnorm2(outside), nrm});
  };

  trace.max_norm_drift = detail::integrate_schrodinger(apply_h, sched, psi, on_sample);
  trace.final_overlap = trace.samples.back().overlap;

  const std::size_t off = static_cast<std::size_t>(L) * logical;
  SparseHermitian clock_at_l(dim, c.n_qubits, L);
  for (std::size_t a = 0; a < logical; ++a) clock_at_l.add(off + a, off + a, 1.0);
  trace.p_clock_final = clock_at_l.expectation(psi).real();
  double p_amp = 0.0;
  for (std::size_t a = 0; a < logical; ++a) p_amp += std::norm(psi[off + a]);
  trace.p_clock_final_amp = p_amp;

  const StateVector target = run_prefix(c, L);
  cplx ip = 0.0;
  for (std::size_t a = 0; a < logical; ++a)
    ip += std::conj(target.amplitudes[a]) * psi[off + a];
  trace.final_fidelity = (p_amp > 0.0) ? std::norm(ip) / p_amp : 0.0;
  return trace;
}

/// Final state of a reduced run, without trace bookkeeping.  Exists so the
/// integrator's convergence order can be measured directly against a
/// finer-step reference.
inline std::vector<cplx> evolve_reduced_final_state(int L, const Schedule& sched) {
  if (L < 1) throw std::invalid_argument("evolve_reduced_final_state: L must be >= 1");
  const std::size_t n = static_cast<std::size_t>(L) + 1;
  std::vector<cplx> psi(n, 0.0);
  psi[0] = 1.0;
  detail::integrate_schrodinger(detail::reduced_apply(n), sched, psi,
                                [](double, double, const std::vector<cplx>&, double) {});
  return psi;
}

/// Final ground-state overlap of a reduced run as a function of total time.
struct SuccessRow {
  double T;
  double overlap;
};

inline std::vector<SuccessRow> success_vs_T(int L, const std::vector<double>& t_list) {
  if (t_list.empty()) throw std::invalid_argument("success_vs_T: empty time list");
  std::vector<SuccessRow> rows;
  rows.reserve(t_list.size());
  for (const double T : t_list)
    rows.push_back({T, evolve_reduced(L, Schedule::with_default_steps(T)).final_overlap});
  return rows;
}

}  // namespace clockgap
