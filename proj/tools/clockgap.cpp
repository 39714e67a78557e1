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

// Command-line driver.  Exit codes: 0 success, 1 invariant violation
// detected while computing, 2 usage or I/O error.  Diagnostics go to
// stderr as a single "error: ..." line; results go to stdout or --out.

#include <exception>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clockgap/cli.hpp"
#include "clockgap/io.hpp"

namespace {

/// Send `text` to stdout when no output path was given, else to the file.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    clockgap::cli::write_text(out_path, text);
  }
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv")
    throw std::invalid_argument("--format: expected json or csv, got '" + format + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clock-Hamiltonian spectra, gap bounds, and adiabatic simulation"};
  app.require_subcommand(1);

  int spectrum_l = 8;
  double spectrum_s = 0.5;
  std::string spectrum_method = "sturm";
  std::string spectrum_format = "json";
  std::string spectrum_out;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Eigenvalues of the reduced (L+1)x(L+1) operator at one (L, s)");
  spectrum->add_option("--L", spectrum_l, "number of gates L (>= 1)");
  spectrum->add_option("--s", spectrum_s, "interpolation parameter in [0, 1]");
  spectrum->add_option("--method", spectrum_method, "dense | sturm | ansatz");
  spectrum->add_option("--format", spectrum_format, "json | csv");
  spectrum->add_option("--out", spectrum_out, "output file (default: stdout)");

  std::string figures_out = ".";
  CLI::App* figures = app.add_subcommand(
      "figures", "Write branch-curve, pole, and eigenpair-comparison datasets as CSV");
  figures->add_option("--out", figures_out, "output directory (default: current directory)");

  std::string bounds_l = "8";
  std::string bounds_format = "json";
  std::string bounds_out;
  int bounds_threads = 0;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Gap report per L: exact minimum, closed-form bound, prior bounds");
  bounds->add_option("--L", bounds_l, "single L or inclusive range a..b");
  bounds->add_option("--format", bounds_format, "json | csv");
  bounds->add_option("--out", bounds_out, "output file (default: stdout)");
  bounds->add_option("--threads", bounds_threads, "worker threads (0 = hardware default)");

  std::string simulate_circuit;
  std::vector<double> simulate_ts;
  std::string simulate_format = "json";
  std::string simulate_out = ".";
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Adiabatic evolution of a circuit's clock construction; traces + summary");
  simulate->add_option("circuit", simulate_circuit, "circuit description (JSON file)")
      ->required();
  simulate->add_option("--T", simulate_ts, "total evolution time (repeatable)");
  simulate->add_option("--format", simulate_format, "summary format: json | csv");
  simulate->add_option("--out", simulate_out, "output directory (default: current directory)");

  int scan_l = 8;
  std::string scan_grid = "0:1:21";
  std::string scan_method = "sturm";
  std::string scan_format = "json";
  std::string scan_out;
  int scan_threads = 0;
  CLI::App* scan =
      app.add_subcommand("scan", "Eigenvalues across an s grid at fixed L");
  scan->add_option("--L", scan_l, "number of gates L (>= 1)");
  scan->add_option("--s-grid", scan_grid, "grid a:b:n over [0, 1]");
  scan->add_option("--method", scan_method, "dense | sturm | ansatz");
  scan->add_option("--format", scan_format, "json | csv");
  scan->add_option("--out", scan_out, "output file (default: stdout)");
  scan->add_option("--threads", scan_threads, "worker threads (0 = hardware default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  namespace cg = clockgap;
  namespace cli = clockgap::cli;
  try {
    if (spectrum->parsed()) {
      check_format(spectrum_format);
      const cli::SpectrumResult r = cli::run_spectrum(spectrum_l, spectrum_s, spectrum_method);
      emit(spectrum_out, spectrum_format == "json" ? cli::spectrum_json(r) : cli::spectrum_csv(r));
    } else if (figures->parsed()) {
      for (const std::string& path : cli::write_figure_data(figures_out))
        std::cout << path << "\n";
    } else if (bounds->parsed()) {
      check_format(bounds_format);
      const std::vector<cg::GapReport> reports =
          cli::run_bounds(cli::parse_l_range(bounds_l), bounds_threads);
      emit(bounds_out, bounds_format == "json" ? cli::bounds_json(reports)
                                               : cli::bounds_csv(reports));
    } else if (simulate->parsed()) {
      check_format(simulate_format);
      if (simulate_ts.empty()) simulate_ts.push_back(100.0);
      const cg::Circuit circuit = cg::circuit_from_json(simulate_circuit);
      const std::vector<cli::SimulateRun> runs = cli::run_simulate(circuit, simulate_ts);
      std::error_code ec;
      std::filesystem::create_directories(simulate_out, ec);
      if (ec)
        throw cli::IoError("cannot create directory '" + simulate_out + "': " + ec.message());
      for (const cli::SimulateRun& run : runs) {
        const std::string name = "trace_T" + cg::format_double(run.T) + ".csv";
        cli::write_text((std::filesystem::path(simulate_out) / name).string(),
                        cli::trace_csv(run.trace));
      }
      const std::string summary = simulate_format == "json"
                                      ? cli::simulate_summary_json(simulate_circuit, runs)
                                      : cli::simulate_summary_csv(runs);
      const std::string summary_name =
          simulate_format == "json" ? "summary.json" : "summary.csv";
      cli::write_text((std::filesystem::path(simulate_out) / summary_name).string(), summary);
      std::cout << summary;
    } else if (scan->parsed()) {
      check_format(scan_format);
      const cli::ScanResult r =
          cli::run_scan(scan_l, cli::parse_s_grid(scan_grid), scan_method, scan_threads);
      emit(scan_out, scan_format == "json" ? cli::scan_json(r) : cli::scan_csv(r));
    }
  } catch (const cli::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
