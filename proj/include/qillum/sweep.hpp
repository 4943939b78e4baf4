// Copyright 2026 The qillum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Parameter sweeps over one scenario field, emitted as deterministic CSV.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qillum/illumination.hpp"

namespace qillum {

enum class Quantity {
  qb_exact,
  qb_exponent,
  qc_exact,
  qc_exponent,
  s_star,
  qb_asymptotic,
  qb_asymptotic_exponent,
  coherent,
  coherent_exponent,
  gamma,
  advantage_db,
  log_negativity,
  signal_photons,
  r1_star,
  r1_star_residual,
};

std::string_view to_string(Quantity q);
Quantity parse_quantity(std::string_view text);

enum class Axis { ns, nb, kappa, r1, r2, r, m };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view text);

enum class Spacing { linear, log };

/// Evenly spaced grid including both endpoints. Log spacing needs start, stop > 0.
std::vector<double> make_grid(double start, double stop, int count, Spacing spacing);

/// "start:stop:count[:log]" or a comma-separated list.
std::vector<double> parse_grid(std::string_view text);

struct SweepSpec {
  ScenarioParams scenario;
  Axis axis = Axis::ns;
  std::vector<double> values;
  std::vector<Quantity> outputs;
  unsigned threads = 1;

  /// Throws ValidationError naming the offending field.
  void validate() const;

  static SweepSpec from_json_text(std::string_view text);
  static SweepSpec from_file(const std::filesystem::path& path);
};

/// Cells are empty where a quantity has no value at that point.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;
  std::vector<std::string> warnings;

  std::string to_csv() const;
};

/// Shortest round-trip-free rendering: 12 significant digits, "C" locale.
std::string format_number(double x);

/// One grid point; a cell is empty when the quantity is undefined there
/// (no critical squeeze root, asymptotics at N_B = 0).
std::vector<std::optional<double>> evaluate_point(const ScenarioParams& params, const std::vector<Quantity>& outputs,
                                                  std::vector<std::string>* warnings = nullptr);

/// Grid points may run on several threads; rows always come out in grid order.
CsvTable run_sweep(const SweepSpec& spec);

// Figure presets. Per-N_S columns are suffixed "_ns<value>".
CsvTable fig1a_table(const std::vector<double>& ns_values, const std::vector<double>& r1_grid, unsigned threads = 1);
CsvTable fig1b_table(const std::vector<double>& ns_grid, unsigned threads = 1);
CsvTable fig2_table(const std::vector<double>& ns_values, const std::vector<double>& r_grid, unsigned threads = 1);

std::vector<double> default_squeeze_grid();  // [0, 3], 301 points
std::vector<double> default_ns_grid();       // [0.01, 1], 101 log-spaced points
std::vector<double> default_ns_values();     // {0.01, 0.1, 1}

/// Single-point summary used by `qillum bounds`.
CsvTable bounds_table(const ScenarioParams& params);

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace qillum
