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
#include <cstddef>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "clockgap/circuit.hpp"
#include "clockgap/vec.hpp"

namespace clockgap {

/// Shortest decimal string that parses back to exactly the same double.
/// Used for every number in emitted CSV so outputs are byte-reproducible.
inline std::string format_double(double x) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

/// Comma-separated emitter with a fixed column schema; the header is written
/// on construction and every row is checked against it.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& columns)
      : out_(out), width_(columns.size()) {
    if (columns.empty()) throw std::invalid_argument("csv: at least one column required");
    write_cells(columns);
  }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (const double v : values) cells.push_back(format_double(v));
    raw_row(cells);
  }

  void raw_row(const std::vector<std::string>& cells) {
    if (cells.size() != width_)
      throw std::invalid_argument("csv: row width " + std::to_string(cells.size()) +
                                  " does not match header width " + std::to_string(width_));
    write_cells(cells);
  }

 private:
  void write_cells(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ostream& out_;
  std::size_t width_;
};

namespace detail {

inline cplx complex_entry_from_json(const nlohmann::json& e, const std::string& where) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw std::invalid_argument(where + " must be a [re, im] number pair");
  return cplx(e[0].get<double>(), e[1].get<double>());
}

inline std::vector<int> targets_from_json(const nlohmann::json& g, const std::string& where) {
  if (!g.contains("targets") || !g["targets"].is_array() || g["targets"].empty())
    throw std::invalid_argument(where + ".targets must be a non-empty array");
  std::vector<int> targets;
  for (std::size_t i = 0; i < g["targets"].size(); ++i) {
    const nlohmann::json& t = g["targets"][i];
    if (!t.is_number_integer())
      throw std::invalid_argument(where + ".targets[" + std::to_string(i) +
                                  "] must be an integer");
    targets.push_back(t.get<int>());
  }
  return targets;
}

}  // namespace detail

/// Parse a circuit description.  Schema:
///   {"n_qubits": N, "gates": [{"name": "h", "targets": [0]},
///                             {"name": "custom", "targets": [0,1],
///                              "matrix": [[[re,im], ...], ...]}, ...]}
/// where a custom matrix is row-major with one [re, im] pair per entry.
/// Errors carry `origin` plus the JSON field path of the offending value.
inline Circuit circuit_from_json_text(const std::string& text, const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }
  const auto fail = [&origin](const std::string& what) -> void {
    throw std::invalid_argument(origin + ": " + what);
  };
  if (!j.is_object()) fail("top level must be an object");
  if (!j.contains("n_qubits") || !j["n_qubits"].is_number_integer())
    fail("n_qubits must be an integer");
  const int n_qubits = j["n_qubits"].get<int>();
  if (!j.contains("gates") || !j["gates"].is_array() || j["gates"].empty())
    fail("gates must be a non-empty array");

  std::vector<Gate> gates;
  for (std::size_t gi = 0; gi < j["gates"].size(); ++gi) {
    const std::string where = "gates[" + std::to_string(gi) + "]";
    const nlohmann::json& g = j["gates"][gi];
    if (!g.is_object()) fail(where + " must be an object");
    if (!g.contains("name") || !g["name"].is_string()) fail(where + ".name must be a string");
    const std::string name = g["name"].get<std::string>();
    const std::vector<int> targets = detail::targets_from_json(g, where);
    try {
      if (name == "custom") {
        if (!g.contains("matrix") || !g["matrix"].is_array())
          fail(where + ".matrix must be an array of rows");
        const std::size_t dim = std::size_t{1} << targets.size();
        if (g["matrix"].size() != dim)
          fail(where + ".matrix must have " + std::to_string(dim) + " rows");
        std::vector<cplx> m;
        m.reserve(dim * dim);
        for (std::size_t r = 0; r < dim; ++r) {
          const nlohmann::json& row = g["matrix"][r];
          const std::string row_where = where + ".matrix[" + std::to_string(r) + "]";
          if (!row.is_array() || row.size() != dim)
            fail(row_where + " must have " + std::to_string(dim) + " entries");
          for (std::size_t c = 0; c < dim; ++c)
            m.push_back(detail::complex_entry_from_json(
                row[c], row_where + "[" + std::to_string(c) + "]"));
        }
        gates.push_back(Gate::custom(targets, std::move(m)));
      } else {
        gates.push_back(Gate::named(name, targets));
      }
    } catch (const std::invalid_argument& e) {
      fail(where + ": " + e.what());
    }
  }
  try {
    return Circuit(n_qubits, std::move(gates));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
    throw;  // unreachable; fail() always throws
  }
}

inline Circuit circuit_from_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("circuit file " + path + ": file not found");
  std::ostringstream buf;
  buf << in.rdbuf();
  return circuit_from_json_text(buf.str(), "circuit file " + path);
}

}  // namespace clockgap
