// Copyright 2026 The qslsim Authors
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

// Front end shared by the qslsim executable and its tests.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qslsim/qsl.hpp"
#include "qslsim/spectral.hpp"

namespace qslsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Bad flags, bad config files, invariant violations in the inputs.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { dynamics, bound_scan, qsl_sweep, reproduce };

std::string_view command_name(Command command);

/// Settings as given, keyed by the config-file name (`omega_c`, `n_list`, ...).
using Settings = std::map<std::string, std::string>;

/// Accepted keys, in the order they are written back out.
const std::vector<std::string>& known_keys();

/// `key = value` lines, `#` comments. Unknown keys are an error naming the key.
Settings read_config_file(const std::filesystem::path& path);

struct RunManifest {
  Command command = Command::dynamics;
  std::string panel;  // reproduce only

  DensityKind density = DensityKind::lorentzian;
  double coupling = 0.0;  // dynamics only; sweeps use the grid
  double width = 1.0;     // lambda or omega_c
  double omega0 = 1.0;
  int n_qubits = 1;
  std::vector<int> n_list;
  double tau = kDefaultHorizon;
  double step = kDefaultStep;
  double grid_start = 0.0;
  double grid_stop = 0.0;
  double grid_step = 0.0;
  double tol = 0.0;
  DynamicsPath method = DynamicsPath::automatic;
  std::filesystem::path output_dir = ".";

  /// Every resolved value, as written to run.conf and the manifest.
  Settings resolved;
  /// key -> "flag" | "file" | "default" | "panel"
  Settings sources;
  /// Human-readable notes, e.g. a flag overriding a file value.
  std::vector<std::string> provenance;

  SpectralDensity density_for(double coupling_value) const;
  SimulationConfig simulation() const;
  std::vector<double> grid() const;
};

/// Merges defaults, the optional config file and explicit flags (flags win),
/// then validates. Throws UsageError.
RunManifest parse_config(Command command, const std::string& panel, const Settings& flags,
                         const std::optional<std::filesystem::path>& config_file);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<std::optional<double>> y;  // gaps break the line
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

std::string render_svg(const Chart& chart);

std::string sha256_hex(const std::string& bytes);

struct EmittedFile {
  std::string name;
  std::string sha256;
  std::size_t bytes = 0;
};

struct RunReport {
  std::vector<EmittedFile> files;
  std::vector<std::string> cell_errors;
};

/// Worker count for sweeps: hardware concurrency capped by QSLSIM_THREADS.
unsigned sweep_threads();

/// Runs the command and writes its files plus run.conf and manifest.json.
/// Library exceptions propagate; cell failures in sweeps are collected.
RunReport execute(const RunManifest& manifest);

/// Whole-program entry: parses argv, runs, maps failures to exit codes.
int run(int argc, char** argv);

}  // namespace qslsim::cli
