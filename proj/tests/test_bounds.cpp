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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "clockgap/bounds.hpp"
#include "clockgap/dense.hpp"
#include "clockgap/optimize.hpp"
#include "clockgap/tridiag.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

clockgap::DenseSym random_sym(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  clockgap::DenseSym m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double x = dist(rng);
      m(i, j) = x;
      m(j, i) = x;
    }
  return m;
}

}  // namespace

TEST_CASE("weyl_sandwich: pinned intervals", "[bounds]") {
  {
    const auto [lo, hi] = clockgap::weyl_sandwich({0.0, 1.0}, {0.0, 0.0}, 1);
    REQUIRE(lo == 1.0);
    REQUIRE(hi == 1.0);
  }
  {
    const auto [lo, hi] = clockgap::weyl_sandwich({-1.0, 0.0}, {0.0, 2.0}, 0);
    REQUIRE(lo == -1.0);
    REQUIRE(hi == 1.0);
  }
  REQUIRE_THROWS_AS(clockgap::weyl_sandwich({0.0, 1.0}, {0.0}, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(clockgap::weyl_sandwich({0.0, 1.0}, {0.0, 1.0}, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(clockgap::weyl_sandwich({}, {}, 0), std::invalid_argument);
}

TEST_CASE("weyl_sandwich contains every eigenvalue of random sums", "[bounds]") {
  std::mt19937_64 rng(0x5a17b0u);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 7);  // 2..8
    const clockgap::DenseSym a = random_sym(n, rng);
    const clockgap::DenseSym b = random_sym(n, rng);
    clockgap::DenseSym sum(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum(i, j) = a(i, j) + b(i, j);
    const std::vector<double> ea = clockgap::jacobi_eigs(a).eigenvalues;
    const std::vector<double> eb = clockgap::jacobi_eigs(b).eigenvalues;
    const std::vector<double> es = clockgap::jacobi_eigs(sum).eigenvalues;
    for (std::size_t k = 0; k < n; ++k) {
      const auto [lo, hi] = clockgap::weyl_sandwich(ea, eb, k);
      REQUIRE(es[k] >= lo - 1e-10);
      REQUIRE(es[k] <= hi + 1e-10);
    }
  }
}

TEST_CASE("level bounds: frozen values and endpoint behaviour", "[bounds]") {
  REQUIRE(clockgap::lambda1_lower(1, 0.0) == 1.0);
  REQUIRE(clockgap::lambda1_lower(8, 0.0) == 1.0);
  REQUIRE_THAT(clockgap::lambda1_lower(1, 1.0),
               Catch::Matchers::WithinAbs(1.0 - std::cos(kPi / 4.0), 1e-15));
  // At (L=1, s=1) the exact first excited level is 1 - cos(pi/2) = 1,
  // comfortably above the floor ~0.29289.
  {
    const clockgap::SymTridiag m = clockgap::reduced_hamiltonian(1, 1.0);
    REQUIRE_THAT(clockgap::eigenvalue_by_index(m, 1), Catch::Matchers::WithinAbs(1.0, 1e-13));
  }

  REQUIRE(clockgap::lambda0_upper(4, 1.0) == 0.0);
  REQUIRE_THAT(clockgap::lambda0_upper(4, 0.5), Catch::Matchers::WithinAbs(1.0 / 6.0, 1e-15));
  REQUIRE(clockgap::lambda0_upper(4, 0.0) == 0.0);

  REQUIRE_THROWS_AS(clockgap::lambda1_lower(0, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(clockgap::lambda1_lower(1, -0.1), std::domain_error);
  REQUIRE_THROWS_AS(clockgap::lambda1_lower(1, 1.1), std::domain_error);
  REQUIRE_THROWS_AS(clockgap::lambda0_upper(0, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(clockgap::lambda0_upper(1, 1.5), std::domain_error);
}

TEST_CASE("bound chain holds on a dense (L, s) grid", "[bounds]") {
  for (const int L : {1, 2, 4, 8, 16, 32}) {
    for (int i = 0; i <= 20; ++i) {
      const double s = static_cast<double>(i) / 20.0;
      const clockgap::SymTridiag m = clockgap::reduced_hamiltonian(L, s);
      const double lam0 = clockgap::eigenvalue_by_index(m, 0);
      const double lam1 = clockgap::eigenvalue_by_index(m, 1);
      REQUIRE(lam0 <= clockgap::lambda0_upper(L, s) + 1e-12);
      REQUIRE(lam1 >= clockgap::lambda1_lower(L, s) - 1e-12);
      REQUIRE(lam1 - lam0 >= clockgap::gap_lower_curve(L, s) - 2e-12);
    }
  }
}

TEST_CASE("verify_decompositions: entrywise identities at machine precision", "[bounds]") {
  // Degenerate corners: q = 1 at s = 1, and the finite s -> 0 limit.
  {
    const auto [r1, r2] = clockgap::verify_decompositions(1, 1.0);
    REQUIRE(r1 == 0.0);
    REQUIRE(r2 == 0.0);
  }
  {
    const auto [r1, r2] = clockgap::verify_decompositions(2, 0.5);
    REQUIRE(r1 <= 1e-15);
    REQUIRE(r2 <= 1e-15);
  }
  {
    const auto [r1, r2] = clockgap::verify_decompositions(8, 0.3);
    REQUIRE(r1 <= 1e-14);
    REQUIRE(r2 <= 1e-14);
  }
  for (int L = 1; L <= 16; ++L) {
    for (int i = 0; i <= 10; ++i) {
      const double s = static_cast<double>(i) / 10.0;
      const auto [r1, r2] = clockgap::verify_decompositions(L, s);
      REQUIRE(r1 <= 1e-14);
      REQUIRE(r2 <= 1e-14);
    }
  }
  REQUIRE_THROWS_AS(clockgap::verify_decompositions(0, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(clockgap::verify_decompositions(1, 2.0), std::domain_error);
}

TEST_CASE("gap_lower_curve: frozen points", "[bounds]") {
  REQUIRE(clockgap::gap_lower_curve(1, 0.0) == 1.0);
  REQUIRE(clockgap::gap_lower_curve(8, 0.0) == 1.0);
  REQUIRE_THAT(clockgap::gap_lower_curve(8, 1.0),
               Catch::Matchers::WithinAbs(1.0 - std::cos(kPi / 18.0), 1e-15));
  REQUIRE_THAT(clockgap::gap_lower_curve(8, 0.5),
               Catch::Matchers::WithinAbs(0.340929456827229, 1e-12));
  REQUIRE_THAT(clockgap::gap_lower_curve(8, 0.5),
               Catch::Matchers::WithinAbs(1.0 - 0.5 * std::cos(kPi / 18.0) - 1.0 / 6.0, 1e-15));
}

TEST_CASE("min_gap_bound_closed: frozen value, leading order, numeric consistency", "[bounds]") {
  {
    const clockgap::ClosedFormBound b = clockgap::min_gap_bound_closed(1);
    REQUIRE_THAT(b.value, Catch::Matchers::WithinAbs(0.28130456767205198, 1e-15));
    const double two_c = 2.0 + std::sqrt(2.0);  // 2 [1 + cos(pi/4)]
    REQUIRE_THAT(b.value, Catch::Matchers::WithinAbs(2.0 * std::sqrt(two_c) - two_c, 1e-15));
    REQUIRE_THAT(b.leading_order, Catch::Matchers::WithinAbs(kPi * kPi / 32.0, 1e-16));
  }
  for (const int L : {8, 16, 64, 256, 1024}) {
    const clockgap::ClosedFormBound b = clockgap::min_gap_bound_closed(L);
    const double eps = clockgap::epsilon_angle(L);
    REQUIRE(std::abs(b.value - b.leading_order) <= eps * eps * eps * eps);
  }
  // The closed form is the true minimum of the floor curve: re-minimize
  // numerically on a 10^4-point grid with golden-section refinement.
  for (const int L : {1, 3, 8, 32}) {
    const auto curve = [L](double s) { return clockgap::gap_lower_curve(L, s); };
    const auto [s_min, value] = clockgap::grid_then_golden(curve, 0.0, 1.0, 10001, 1e-12);
    const clockgap::ClosedFormBound b = clockgap::min_gap_bound_closed(L);
    REQUIRE_THAT(value, Catch::Matchers::WithinAbs(b.value, 1e-10));
    const double s_star = 2.0 - std::sqrt(2.0 / (1.0 + std::cos(clockgap::epsilon_angle(L))));
    REQUIRE_THAT(s_min, Catch::Matchers::WithinAbs(s_star, 1e-4));
  }
}

TEST_CASE("min_gap_exact: two-level closed form and the gap theorem", "[bounds]") {
  // L=1 reduces to a 2x2 pencil with gap sqrt((1-s)^2 + s^2), minimized at
  // s = 1/2 with value sqrt(2)/2.
  for (const double s : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const clockgap::SymTridiag m = clockgap::reduced_hamiltonian(1, s);
    const double gap = clockgap::eigenvalue_by_index(m, 1) - clockgap::eigenvalue_by_index(m, 0);
    REQUIRE_THAT(gap, Catch::Matchers::WithinAbs(std::hypot(1.0 - s, s), 1e-13));
  }
  const clockgap::GapMinimum g1 = clockgap::min_gap_exact(1);
  REQUIRE_THAT(g1.gap, Catch::Matchers::WithinAbs(std::sqrt(0.5), 1e-11));
  REQUIRE_THAT(g1.s_star, Catch::Matchers::WithinAbs(0.5, 1e-4));

  for (const int L : {2, 4, 8, 16, 32}) {
    const clockgap::GapMinimum g = clockgap::min_gap_exact(L);
    REQUIRE(g.gap >= clockgap::min_gap_bound_closed(L).value - 2e-12);
    REQUIRE(g.s_star > 0.0);
    REQUIRE(g.s_star < 1.0);
  }
  {
    const clockgap::GapMinimum g8 = clockgap::min_gap_exact(8);
    REQUIRE(g8.gap >= 1.0 / 162.0);   // 1/[2(L+1)^2]
    REQUIRE(g8.gap >= 1.0 / 9216.0);  // 1/(144 L^2)
  }
  REQUIRE_THROWS_AS(clockgap::min_gap_exact(0), std::invalid_argument);
}

TEST_CASE("compare_prior_bounds: report coherence and large-L ratios", "[bounds]") {
  {
    const clockgap::GapReport r = clockgap::compare_prior_bounds(1);
    REQUIRE(r.L == 1);
    REQUIRE(r.table.size() == 41);
    REQUIRE_THAT(r.epsilon, Catch::Matchers::WithinAbs(kPi / 4.0, 1e-16));
    for (const double x : {r.min_gap_exact, r.s_star, r.bound_closed_form, r.bound_leading_order,
                           r.aharonov_bound, r.deift_bound, r.ratio_aharonov, r.ratio_deift})
      REQUIRE(std::isfinite(x));
    REQUIRE(r.min_gap_exact >= r.bound_closed_form - 2e-12);
    REQUIRE(r.ratio_aharonov > 1.0);
    REQUIRE(r.ratio_deift > 1.0);
    REQUIRE_NOTHROW(clockgap::validate_gap_report(r));
  }
  {
    const clockgap::GapReport r = clockgap::compare_prior_bounds(512);
    const double target_a = 18.0 * kPi * kPi;
    const double target_d = kPi * kPi / 4.0;
    REQUIRE(r.ratio_aharonov >= 0.95 * target_a);
    REQUIRE(r.ratio_aharonov <= 1.05 * target_a);
    REQUIRE(r.ratio_deift >= 0.95 * target_d);
    REQUIRE(r.ratio_deift <= 1.05 * target_d);
    REQUIRE_NOTHROW(clockgap::validate_gap_report(r));
  }
  REQUIRE_THROWS_AS(clockgap::compare_prior_bounds(0), std::invalid_argument);
  REQUIRE_THROWS_AS(clockgap::compare_prior_bounds(2, 1), std::invalid_argument);
}

TEST_CASE("validate_gap_report rejects a doctored report", "[bounds]") {
  clockgap::GapReport r = clockgap::compare_prior_bounds(4);
  r.min_gap_exact = r.bound_closed_form / 2.0;
  REQUIRE_THROWS_AS(clockgap::validate_gap_report(r), std::runtime_error);
}

TEST_CASE("bound chain improves monotonically with the prior art", "[bounds]") {
  for (int L = 1; L <= 1024; ++L) {
    const double closed = clockgap::min_gap_bound_closed(L).value;
    const double deift = clockgap::deift_bound(L);
    const double aharonov = clockgap::aharonov_bound(L);
    REQUIRE(closed > deift);
    REQUIRE(deift > aharonov);
  }
  REQUIRE_THROWS_AS(clockgap::aharonov_bound(0), std::invalid_argument);
  REQUIRE_THROWS_AS(clockgap::deift_bound(0), std::invalid_argument);
}

TEST_CASE("ground-level ceiling is tight at s = 1", "[bounds]") {
  for (const int L : {1, 4, 16}) {
    REQUIRE(clockgap::lambda0_upper(L, 1.0) == 0.0);
    const clockgap::SymTridiag m = clockgap::reduced_hamiltonian(L, 1.0);
    REQUIRE_THAT(clockgap::eigenvalue_by_index(m, 0), Catch::Matchers::WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("golden-section minimizer: quadratic, trig, and bimodal rejection", "[bounds]") {
  {
    const auto [x, fx] = clockgap::golden_section([](double t) { return (t - 0.3) * (t - 0.3); },
                                                  0.0, 1.0, 1e-10);
    REQUIRE_THAT(x, Catch::Matchers::WithinAbs(0.3, 1e-7));
    REQUIRE(fx <= 1e-13);
  }
  {
    const auto [x, fx] = clockgap::grid_then_golden([](double t) { return std::cos(3.0 * t); },
                                                    0.0, 2.0, 501, 1e-10);
    REQUIRE_THAT(x, Catch::Matchers::WithinAbs(kPi / 3.0, 1e-6));
    REQUIRE_THAT(fx, Catch::Matchers::WithinAbs(-1.0, 1e-12));
  }
  // Two separated valleys of comparable depth must be reported, not silently
  // resolved to one of them.
  const auto bimodal = [](double t) { return std::sin(3.0 * t); };
  REQUIRE_THROWS_AS(clockgap::grid_then_golden(bimodal, 0.0, 5.0, 501, 1e-10),
                    std::runtime_error);
  REQUIRE_THROWS_AS(clockgap::grid_then_golden(bimodal, 0.0, 5.0, 2, 1e-10),
                    std::invalid_argument);
}
