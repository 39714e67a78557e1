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

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "clockgap/adiabatic.hpp"
#include "clockgap/ansatz.hpp"
#include "clockgap/bounds.hpp"
#include "clockgap/circuit.hpp"
#include "clockgap/io.hpp"
#include "clockgap/parallel.hpp"
#include "clockgap/tridiag.hpp"
#include "clockgap/vec.hpp"

namespace clockgap::cli {

inline constexpr int kSchemaVersion = 1;

/// Filesystem trouble, kept distinct from invariant violations so the driver
/// can map it to the usage/IO exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --------------------------- argument parsing ---------------------------

namespace detail {

inline int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const std::from_chars_result res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw std::invalid_argument(what + ": '" + text + "' is not an integer");
  return value;
}

inline double parse_real(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const std::from_chars_result res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw std::invalid_argument(what + ": '" + text + "' is not a number");
  return value;
}

}  // namespace detail

/// "8" -> {8};  "1..32" -> {1, 2, ..., 32}.
inline std::vector<int> parse_l_range(const std::string& text) {
  const std::size_t dots = text.find("..");
  int lo = 0;
  int hi = 0;
  if (dots == std::string::npos) {
    lo = hi = detail::parse_int(text, "--L");
  } else {
    lo = detail::parse_int(text.substr(0, dots), "--L");
    hi = detail::parse_int(text.substr(dots + 2), "--L");
  }
  if (lo < 1 || hi < lo)
    throw std::invalid_argument("--L: range '" + text + "' must satisfy 1 <= first <= last");
  std::vector<int> ls;
  ls.reserve(static_cast<std::size_t>(hi - lo) + 1);
  for (int l = lo; l <= hi; ++l) ls.push_back(l);
  return ls;
}

/// "a:b:n" -> n points evenly spaced on [a, b] (n = 1 requires a = b).
inline std::vector<double> parse_s_grid(const std::string& text) {
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("--s-grid: expected a:b:n, got '" + text + "'");
  const double a = detail::parse_real(text.substr(0, c1), "--s-grid");
  const double b = detail::parse_real(text.substr(c1 + 1, c2 - c1 - 1), "--s-grid");
  const int n = detail::parse_int(text.substr(c2 + 1), "--s-grid");
  if (!(a >= 0.0 && a <= b && b <= 1.0))
    throw std::invalid_argument("--s-grid: need 0 <= a <= b <= 1");
  if (n < 1 || n > 1000000) throw std::invalid_argument("--s-grid: need 1 <= n <= 1000000");
  if (n == 1 && a != b) throw std::invalid_argument("--s-grid: a single point requires a = b");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    grid.push_back(a + (b - a) * frac);
  }
  return grid;
}

// ------------------------------- output ---------------------------------

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed while writing '" + path + "'");
}

// ------------------------------ spectrum --------------------------------

struct SpectrumResult {
  int L = 0;
  double s = 0.0;
  std::string method;
  std::vector<double> eigenvalues;
};

inline SpectrumResult run_spectrum(int L, double s, const std::string& method) {
  SpectrumResult r;
  r.L = L;
  r.s = s;
  r.method = method;
  if (method == "dense") {
    r.eigenvalues = eigs_dense_oracle(reduced_hamiltonian(L, s)).eigenvalues;
  } else if (method == "sturm") {
    r.eigenvalues = eigs_bisect(reduced_hamiltonian(L, s)).eigenvalues;
  } else if (method == "ansatz") {
    r.eigenvalues = full_ansatz_spectrum(L, s).eigenvalues;
  } else {
    throw std::invalid_argument("spectrum: unknown method '" + method +
                                "' (expected dense, sturm, or ansatz)");
  }
  return r;
}

inline std::string spectrum_json(const SpectrumResult& r) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "spectrum";
  j["L"] = r.L;
  j["s"] = r.s;
  j["method"] = r.method;
  j["eigenvalues"] = r.eigenvalues;
  return j.dump(2) + "\n";
}

inline std::string spectrum_csv(const SpectrumResult& r) {
  std::ostringstream out;
  CsvWriter csv(out, {"index", "eigenvalue"});
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
    csv.raw_row({std::to_string(i), format_double(r.eigenvalues[i])});
  return out.str();
}

// -------------------------------- scan ----------------------------------

struct ScanResult {
  int L = 0;
  std::string method;
  std::vector<double> s_values;
  std::vector<std::vector<double>> eigenvalues;  // one ascending row per s
};

inline ScanResult run_scan(int L, const std::vector<double>& s_values, const std::string& method,
                           int threads) {
  if (s_values.empty()) throw std::invalid_argument("scan: empty s grid");
  ScanResult r;
  r.L = L;
  r.method = method;
  r.s_values = s_values;
  r.eigenvalues.resize(s_values.size());
  parallel_for(s_values.size(), threads, [&](std::size_t i) {
    r.eigenvalues[i] = run_spectrum(L, s_values[i], method).eigenvalues;
  });
  return r;
}

inline std::string scan_json(const ScanResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < r.s_values.size(); ++i)
    rows.push_back({{"s", r.s_values[i]}, {"eigenvalues", r.eigenvalues[i]}});
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "scan";
  j["L"] = r.L;
  j["method"] = r.method;
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

inline std::string scan_csv(const ScanResult& r) {
  std::vector<std::string> header{"s"};
  for (int l = 0; l <= r.L; ++l) header.push_back("lambda" + std::to_string(l));
  std::ostringstream out;
  CsvWriter csv(out, header);
  for (std::size_t i = 0; i < r.s_values.size(); ++i) {
    std::vector<double> row{r.s_values[i]};
    row.insert(row.end(), r.eigenvalues[i].begin(), r.eigenvalues[i].end());
    csv.row(row);
  }
  return out.str();
}

// ------------------------------- bounds ---------------------------------

inline std::vector<GapReport> run_bounds(const std::vector<int>& ls, int threads) {
  if (ls.empty()) throw std::invalid_argument("bounds: empty L list");
  std::vector<GapReport> reports(ls.size());
  parallel_for(ls.size(), threads, [&](std::size_t i) {
    reports[i] = compare_prior_bounds(ls[i]);
    validate_gap_report(reports[i]);
  });
  return reports;
}

inline nlohmann::json gap_report_json(const GapReport& r) {
  nlohmann::json table = nlohmann::json::array();
  for (const GapRow& row : r.table)
    table.push_back({{"s", row.s},
                     {"lambda0", row.lambda0},
                     {"lambda1", row.lambda1},
                     {"gap", row.gap},
                     {"lambda0_upper", row.lambda0_ub},
                     {"lambda1_lower", row.lambda1_lb}});
  return {{"L", r.L},
          {"epsilon", r.epsilon},
          {"min_gap_exact", r.min_gap_exact},
          {"s_star", r.s_star},
          {"bound_closed_form", r.bound_closed_form},
          {"bound_leading_order", r.bound_leading_order},
          {"aharonov_bound", r.aharonov_bound},
          {"deift_bound", r.deift_bound},
          {"ratio_aharonov", r.ratio_aharonov},
          {"ratio_deift", r.ratio_deift},
          {"table", table}};
}

inline std::string bounds_json(const std::vector<GapReport>& reports) {
  nlohmann::json list = nlohmann::json::array();
  for (const GapReport& r : reports) list.push_back(gap_report_json(r));
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "bounds";
  j["reports"] = list;
  return j.dump(2) + "\n";
}

inline std::string bounds_csv(const std::vector<GapReport>& reports) {
  std::ostringstream out;
  CsvWriter csv(out, {"L", "epsilon", "min_gap_exact", "s_star", "bound_closed_form",
                      "bound_leading_order", "aharonov_bound", "deift_bound", "ratio_aharonov",
                      "ratio_deift"});
  for (const GapReport& r : reports)
    csv.raw_row({std::to_string(r.L), format_double(r.epsilon), format_double(r.min_gap_exact),
                 format_double(r.s_star), format_double(r.bound_closed_form),
                 format_double(r.bound_leading_order), format_double(r.aharonov_bound),
                 format_double(r.deift_bound), format_double(r.ratio_aharonov),
                 format_double(r.ratio_deift)});
  return out.str();
}

// ------------------------------- figures --------------------------------

/// Emit the five figure datasets into `dir` and return the written paths:
///   branch_curve_real.csv        theta,s            (L = 8)
///   branch_curve_complex.csv     l,theta,s          (L = 8, between poles)
///   branch_poles.csv             l,theta            (theta = (2l-1) pi/18)
///   eigenvalue_comparison.csv    s,lambda{l}_exact,lambda{l}_approx (L = 8)
///   eigenvector_comparison.csv   level,k,exact,approx,cosine (L = 32, s = 0.8)
inline std::vector<std::string> write_figure_data(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
  const int L = 8;
  const double eps = epsilon_angle(L);
  std::vector<std::string> written;

  {
    std::ostringstream out;
    CsvWriter csv(out, {"theta", "s"});
    for (int i = 1; i <= 480; ++i) {
      const double theta = 0.025 * static_cast<double>(i);
      csv.row({theta, f_real(L, theta)});
    }
    const std::string path = (fs::path(dir) / "branch_curve_real.csv").string();
    write_text(path, out.str());
    written.push_back(path);
  }
  {
    std::ostringstream out;
    CsvWriter csv(out, {"l", "theta", "s"});
    for (int l = 1; l <= L; ++l) {
      const double lo = (2.0 * l - 1.0) * eps;
      const double hi = (2.0 * l + 1.0) * eps;
      const double margin = (hi - lo) * 1e-3;
      for (int k = 0; k <= 48; ++k) {
        const double theta =
            lo + margin + (hi - lo - 2.0 * margin) * static_cast<double>(k) / 48.0;
        csv.raw_row({std::to_string(l), format_double(theta), format_double(f_complex(L, theta))});
      }
    }
    const std::string path = (fs::path(dir) / "branch_curve_complex.csv").string();
    write_text(path, out.str());
    written.push_back(path);
  }
  {
    std::ostringstream out;
    CsvWriter csv(out, {"l", "theta"});
    for (int l = 1; l <= L; ++l)
      csv.raw_row({std::to_string(l), format_double((2.0 * l - 1.0) * eps)});
    const std::string path = (fs::path(dir) / "branch_poles.csv").string();
    write_text(path, out.str());
    written.push_back(path);
  }
  {
    std::vector<std::string> header{"s"};
    for (int l = 0; l <= L; ++l) {
      header.push_back("lambda" + std::to_string(l) + "_exact");
      header.push_back("lambda" + std::to_string(l) + "_approx");
    }
    std::ostringstream out;
    CsvWriter csv(out, header);
    for (int i = 0; i <= 100; ++i) {
      const double s = static_cast<double>(i) / 100.0;
      const std::vector<double> exact = eigs_bisect(reduced_hamiltonian(L, s)).eigenvalues;
      std::vector<double> row{s};
      for (int l = 0; l <= L; ++l) {
        row.push_back(exact[static_cast<std::size_t>(l)]);
        row.push_back(l == 0 ? lambda0_approx(s)
                             : 1.0 - s * std::cos(theta_l_approx(L, l, s)));
      }
      csv.row(row);
    }
    const std::string path = (fs::path(dir) / "eigenvalue_comparison.csv").string();
    write_text(path, out.str());
    written.push_back(path);
  }
  {
    const int Lv = 32;
    const double s = 0.8;
    const Spectrum spec = eigs_bisect(reduced_hamiltonian(Lv, s), true);
    std::ostringstream out;
    CsvWriter csv(out, {"level", "k", "exact", "approx", "cosine"});
    for (int level = 0; level < 4; ++level) {
      std::vector<double> approx;
      if (level == 0) {
        approx = normalized(psi0_approx(Lv, s));
      } else {
        const BranchSolution sol{Branch::Complex, level, theta_l_approx(Lv, level, s), s, Lv};
        approx = normalized(ansatz_eigenvector(sol));
      }
      std::vector<double> exact = spec.eigenvectors[static_cast<std::size_t>(level)];
      if (dot(exact, approx) < 0.0)
        for (double& x : exact) x = -x;
      const double cosine = cosine_similarity(exact, approx);
      for (int k = 0; k <= Lv; ++k)
        csv.raw_row({std::to_string(level), std::to_string(k),
                     format_double(exact[static_cast<std::size_t>(k)]),
                     format_double(approx[static_cast<std::size_t>(k)]),
                     format_double(cosine)});
    }
    const std::string path = (fs::path(dir) / "eigenvector_comparison.csv").string();
    write_text(path, out.str());
    written.push_back(path);
  }
  return written;
}

// ------------------------------ simulate --------------------------------

struct SimulateRun {
  double T = 0.0;
  std::string mode;  // "full" or "reduced"
  int L = 0;
  SimulationTrace trace;
};

inline std::vector<SimulateRun> run_simulate(const Circuit& c, const std::vector<double>& t_list) {
  if (t_list.empty()) throw std::invalid_argument("simulate: need at least one --T value");
  const std::size_t dim = (static_cast<std::size_t>(c.length()) + 1) << c.n_qubits;
  std::vector<SimulateRun> runs;
  runs.reserve(t_list.size());
  for (const double T : t_list) {
    SimulateRun run;
    run.T = T;
    run.L = c.length();
    if (dim <= 4096) {
      run.mode = "full";
      run.trace = evolve_full(c, Schedule::with_default_steps(T));
    } else {
      run.mode = "reduced";
      run.trace = evolve_reduced(c.length(), Schedule::with_default_steps(T));
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

inline std::string trace_csv(const SimulationTrace& trace) {
  std::ostringstream out;
  CsvWriter csv(out, {"t", "s", "overlap", "leakage", "norm"});
  for (const TraceSample& smp : trace.samples)
    csv.row({smp.t, smp.s, smp.overlap, smp.leakage, smp.norm});
  return out.str();
}

inline std::string simulate_summary_json(const std::string& circuit_origin,
                                         const std::vector<SimulateRun>& runs) {
  nlohmann::json list = nlohmann::json::array();
  for (const SimulateRun& run : runs)
    list.push_back({{"T", run.T},
                    {"mode", run.mode},
                    {"L", run.L},
                    {"final_overlap", run.trace.final_overlap},
                    {"p_clock_final", run.trace.p_clock_final},
                    {"p_clock_final_amp", run.trace.p_clock_final_amp},
                    {"final_fidelity", run.trace.final_fidelity},
                    {"max_norm_drift", run.trace.max_norm_drift},
                    {"samples", run.trace.samples.size()}});
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "simulate";
  j["circuit"] = circuit_origin;
  j["runs"] = list;
  return j.dump(2) + "\n";
}

inline std::string simulate_summary_csv(const std::vector<SimulateRun>& runs) {
  std::ostringstream out;
  CsvWriter csv(out, {"T", "mode", "L", "final_overlap", "p_clock_final", "p_clock_final_amp",
                      "final_fidelity", "max_norm_drift", "samples"});
  for (const SimulateRun& run : runs)
    csv.raw_row({format_double(run.T), run.mode, std::to_string(run.L),
                 format_double(run.trace.final_overlap), format_double(run.trace.p_clock_final),
                 format_double(run.trace.p_clock_final_amp),
                 format_double(run.trace.final_fidelity),
                 format_double(run.trace.max_norm_drift),
                 std::to_string(run.trace.samples.size())});
  return out.str();
}

}  // namespace clockgap::cli
