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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "cli.hpp"
#include "qslsim/boundstate.hpp"
#include "qslsim/errors.hpp"

namespace qslsim::cli {

namespace {

std::string flag_of(const std::string& key) {
  std::string flag = "--" + key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return flag;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw UsageError(fmt::format("{}: expected a finite number, got '{}'", flag_of(key), text));
  }
  return value;
}

int parse_int(const std::string& key, const std::string& text) {
  int value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(fmt::format("{}: expected an integer, got '{}'", flag_of(key), text));
  }
  return value;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    out.push_back(parse_int(key, trim(std::string_view(text).substr(pos, comma - pos))));
    pos = comma + 1;
  }
  return out;
}

bool is_bound_panel(const std::string& panel) { return panel == "fig1a" || panel == "fig2a"; }

// Which keys make sense for a command; anything else given explicitly is a
// usage error rather than silently ignored.
std::set<std::string> applicable_keys(Command command, const std::string& panel,
                                      DensityKind density) {
  std::set<std::string> keys = {"density", "omega0", "out"};
  keys.insert(density == DensityKind::lorentzian ? "lambda" : "omega_c");
  const bool bound = command == Command::bound_scan ||
                     (command == Command::reproduce && is_bound_panel(panel));
  if (command == Command::dynamics) {
    keys.insert({density == DensityKind::lorentzian ? "gamma0" : "gamma", "n", "tau", "step",
                 "tol", "method"});
  } else if (bound) {
    keys.insert({"n_list", "grid_start", "grid_stop", "grid_step", "tol"});
  } else {
    keys.insert({"n_list", "grid_start", "grid_stop", "grid_step", "tau", "step", "method"});
  }
  return keys;
}

std::string format_double(double v) { return fmt::format("{}", v); }

}  // namespace

std::string_view command_name(Command command) {
  switch (command) {
    case Command::dynamics: return "dynamics";
    case Command::bound_scan: return "bound-scan";
    case Command::qsl_sweep: return "qsl-sweep";
    case Command::reproduce: return "reproduce";
  }
  return "?";
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "density", "gamma0",    "lambda",    "gamma",     "omega_c", "omega0", "n",      "n_list",
      "tau",     "step",      "grid_start", "grid_stop", "grid_step", "tol",  "method", "out"};
  return keys;
}

Settings read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(fmt::format("cannot read config file '{}'", path.string()));
  Settings settings;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw UsageError(fmt::format("{}:{}: expected 'key = value'", path.string(), number));
    }
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto& known = known_keys();
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw UsageError(fmt::format("{}:{}: unknown key '{}'", path.string(), number, key));
    }
    if (value.empty()) {
      throw UsageError(fmt::format("{}:{}: empty value for '{}'", path.string(), number, key));
    }
    settings[key] = value;
  }
  return settings;
}

SpectralDensity RunManifest::density_for(double coupling_value) const {
  return density == DensityKind::lorentzian
             ? SpectralDensity::lorentzian(coupling_value, width, omega0)
             : SpectralDensity::ohmic(coupling_value, width, omega0);
}

SimulationConfig RunManifest::simulation() const {
  return {n_qubits, density_for(coupling), tau, step, tol};
}

std::vector<double> RunManifest::grid() const { return make_grid(grid_start, grid_stop, grid_step); }

RunManifest parse_config(Command command, const std::string& panel, const Settings& flags,
                         const std::optional<std::filesystem::path>& config_file) {
  RunManifest m;
  m.command = command;
  m.panel = panel;

  Settings given;
  Settings sources;
  if (config_file) {
    given = read_config_file(*config_file);
    for (const auto& [key, value] : given) sources[key] = "file";
  }
  for (const auto& [key, value] : flags) {
    const auto& known = known_keys();
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw UsageError(fmt::format("unknown option '{}'", flag_of(key)));
    }
    if (auto it = given.find(key); it != given.end()) {
      m.provenance.push_back(fmt::format("{} = {} from {} overrides config file value {}", key,
                                         value, flag_of(key), it->second));
    }
    given[key] = value;
    sources[key] = "flag";
  }

  // Panels fix the density and the bath width.
  if (command == Command::reproduce) {
    static const std::set<std::string> panels = {"fig1a", "fig1b", "fig2a", "fig2b"};
    if (!panels.contains(panel)) {
      throw UsageError(fmt::format("unknown panel '{}' (expected fig1a, fig1b, fig2a or fig2b)",
                                   panel));
    }
    const std::string fixed = panel.starts_with("fig1") ? "lorentzian" : "ohmic";
    if (auto it = given.find("density"); it != given.end() && it->second != fixed) {
      throw UsageError(fmt::format("--density {} conflicts with panel {} ({})", it->second, panel,
                                   fixed));
    }
    given["density"] = fixed;
    sources["density"] = "panel";
  }

  const auto density_it = given.find("density");
  if (density_it == given.end()) {
    throw UsageError("missing --density (lorentzian or ohmic)");
  }
  if (density_it->second == "lorentzian") {
    m.density = DensityKind::lorentzian;
  } else if (density_it->second == "ohmic") {
    m.density = DensityKind::ohmic;
  } else {
    throw UsageError(
        fmt::format("--density: expected lorentzian or ohmic, got '{}'", density_it->second));
  }

  const auto allowed = applicable_keys(command, panel, m.density);
  for (const auto& [key, value] : given) {
    if (allowed.contains(key)) continue;
    const std::string what =
        command == Command::reproduce ? fmt::format("reproduce {}", panel)
                                      : fmt::format("{} --density {}", command_name(command),
                                                    density_it->second);
    throw UsageError(fmt::format("{} does not apply to {}", flag_of(key), what));
  }

  auto take = [&](const std::string& key, const std::string& fallback) {
    if (auto it = given.find(key); it != given.end()) return it->second;
    sources[key] = "default";
    return fallback;
  };

  const bool lorentzian = m.density == DensityKind::lorentzian;
  const std::string coupling_key = lorentzian ? "gamma0" : "gamma";
  const std::string width_key = lorentzian ? "lambda" : "omega_c";
  const bool bound = allowed.contains("tol") && command != Command::dynamics;

  if (command == Command::dynamics && !given.contains(coupling_key)) {
    throw UsageError(fmt::format("missing {} for --density {}", flag_of(coupling_key),
                                 density_it->second));
  }

  for (const auto& key : known_keys()) {
    if (!allowed.contains(key)) continue;
    if (key == "density") {
      m.resolved[key] = density_it->second;
    } else if (key == coupling_key) {
      m.coupling = parse_double(key, given.at(key));
      m.resolved[key] = format_double(m.coupling);
    } else if (key == width_key) {
      m.width = parse_double(key, take(key, "1"));
      m.resolved[key] = format_double(m.width);
    } else if (key == "omega0") {
      m.omega0 = parse_double(key, take(key, "1"));
      m.resolved[key] = format_double(m.omega0);
    } else if (key == "n") {
      m.n_qubits = parse_int(key, take(key, "1"));
      m.resolved[key] = std::to_string(m.n_qubits);
    } else if (key == "n_list") {
      m.n_list = parse_int_list(key, take(key, "1,2,4,10"));
      m.resolved[key] = fmt::format("{}", fmt::join(m.n_list, ","));
    } else if (key == "tau") {
      m.tau = parse_double(key, take(key, format_double(kDefaultHorizon)));
      m.resolved[key] = format_double(m.tau);
    } else if (key == "step") {
      m.step = parse_double(key, take(key, format_double(kDefaultStep)));
      m.resolved[key] = format_double(m.step);
    } else if (key == "grid_start") {
      m.grid_start = parse_double(key, take(key, "0"));
      m.resolved[key] = format_double(m.grid_start);
    } else if (key == "grid_stop") {
      m.grid_stop = parse_double(key, take(key, lorentzian ? "4" : "8"));
      m.resolved[key] = format_double(m.grid_stop);
    } else if (key == "grid_step") {
      m.grid_step = parse_double(key, take(key, lorentzian ? "0.05" : "0.1"));
      m.resolved[key] = format_double(m.grid_step);
    } else if (key == "tol") {
      const double fallback = bound ? kDefaultBoundTol : kDefaultSolverTol;
      m.tol = parse_double(key, take(key, format_double(fallback)));
      m.resolved[key] = format_double(m.tol);
    } else if (key == "method") {
      const std::string method = take(key, "auto");
      if (method == "auto") {
        m.method = DynamicsPath::automatic;
      } else if (method == "analytic") {
        m.method = DynamicsPath::analytic;
      } else if (method == "volterra") {
        m.method = DynamicsPath::volterra;
      } else {
        throw UsageError(
            fmt::format("--method: expected auto, analytic or volterra, got '{}'", method));
      }
      m.resolved[key] = method;
    } else if (key == "out") {
      m.output_dir = take(key, ".");
      m.resolved[key] = m.output_dir.string();
    }
  }
  for (const auto& [key, value] : m.resolved) {
    if (!sources.contains(key)) sources[key] = "default";
  }
  m.sources = std::move(sources);
  std::erase_if(m.sources, [&](const auto& kv) { return !m.resolved.contains(kv.first); });

  // Physical and numerical invariants, reported as usage errors.
  try {
    if (allowed.contains("tol") && !(m.tol > 0.0)) throw DomainError("invariant violated: tol > 0");
    if (command == Command::dynamics) {
      m.simulation().validate();
      if (m.method == DynamicsPath::analytic && !lorentzian) {
        throw DomainError("--method analytic requires --density lorentzian");
      }
    } else {
      validate_n_list(m.n_list);
      const auto grid = m.grid();
      validate_coupling_grid(grid);
      (void)m.density_for(grid.back());
      if (!bound) {
        SimulationConfig probe{1, m.density_for(grid.back()), m.tau, m.step, kDefaultSolverTol};
        probe.validate();
        if (m.method == DynamicsPath::analytic && !lorentzian) {
          throw DomainError("--method analytic requires --density lorentzian");
        }
      }
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return m;
}

}  // namespace qslsim::cli
