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

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>
#include <utility>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cli.hpp"
#include "json.hpp"
#include "qslsim/boundstate.hpp"
#include "qslsim/errors.hpp"
#include "qslsim/simd/complex_dot.hpp"

namespace qslsim::cli {

namespace {

using Outputs = std::vector<std::pair<std::string, std::string>>;

constexpr std::size_t kMaxPlotPoints = 2000;

std::string run_conf(const RunManifest& m) {
  std::string text = fmt::format("# qslsim {}{}\n", command_name(m.command),
                                 m.panel.empty() ? "" : " " + m.panel);
  for (const auto& key : known_keys()) {
    if (auto it = m.resolved.find(key); it != m.resolved.end()) {
      text += fmt::format("{} = {}\n", key, it->second);
    }
  }
  return text;
}

std::string describe(const RunManifest& m) {
  const bool lorentzian = m.density == DensityKind::lorentzian;
  return fmt::format("{}, {} = {}", lorentzian ? "Lorentzian" : "Ohmic",
                     lorentzian ? "lambda" : "omega_c", m.width);
}

void dynamics(const RunManifest& m, Outputs& out) {
  const auto config = m.simulation();
  const bool analytic = m.method == DynamicsPath::analytic ||
                        (m.method == DynamicsPath::automatic && m.density == DensityKind::lorentzian);
  const auto traj = analytic ? analytic_trajectory(config) : solve_amplitude(config);
  out.emplace_back("trajectory.csv", to_csv(traj));
  out.emplace_back("gamma.csv", to_csv(decay_rate(traj)));

  Series population{"|C1|^2", {}, {}};
  const std::size_t stride = std::max<std::size_t>(1, traj.size() / kMaxPlotPoints);
  for (std::size_t k = 0; k < traj.size(); k += stride) {
    population.x.push_back(traj.times[k]);
    population.y.emplace_back(traj.population[k]);
  }
  const bool lorentzian = m.density == DensityKind::lorentzian;
  Chart chart{fmt::format("{}, {} = {}, N = {}", describe(m), lorentzian ? "gamma0" : "gamma",
                          m.coupling, m.n_qubits),
              "t", "population", {std::move(population)}};
  out.emplace_back("trajectory.svg", render_svg(chart));
}

void bound_scan(const RunManifest& m, const std::string& stem, Outputs& out, RunReport& report) {
  const auto grid = m.grid();
  const auto table =
      bound_energy_scan(m.density_for(0.0), grid, m.n_list, m.tol, sweep_threads());
  out.emplace_back(stem + ".csv", to_csv(table));

  Chart chart{fmt::format("Bound-state energy ({})", describe(m)),
              m.density == DensityKind::lorentzian ? "gamma0" : "gamma", "E", {}};
  for (std::size_t ni = 0; ni < m.n_list.size(); ++ni) {
    Series s{fmt::format("N = {}", m.n_list[ni]), grid, {}};
    for (std::size_t ci = 0; ci < grid.size(); ++ci) {
      const auto& cell = table.at(ni, ci);
      if (!cell.error.empty()) {
        report.cell_errors.push_back(
            fmt::format("coupling {} N {}: {}", cell.coupling, cell.n_qubits, cell.error));
      }
      s.y.push_back(cell.result.energy);
    }
    chart.series.push_back(std::move(s));
  }
  out.emplace_back(stem + ".svg", render_svg(chart));
}

void sweep(const RunManifest& m, const std::string& stem, Outputs& out, RunReport& report) {
  const auto grid = m.grid();
  const auto table = qsl_sweep(m.density_for(0.0), grid, m.n_list, m.tau, m.step, m.method,
                               sweep_threads());
  out.emplace_back(stem + ".csv", to_csv(table));

  Chart chart{fmt::format("QSL time ({}, tau = {})", describe(m), m.tau),
              m.density == DensityKind::lorentzian ? "gamma0" : "gamma", "tau_QSL", {}};
  for (std::size_t ni = 0; ni < m.n_list.size(); ++ni) {
    Series s{fmt::format("N = {}", m.n_list[ni]), grid, {}};
    for (std::size_t ci = 0; ci < grid.size(); ++ci) {
      const auto& cell = table.at(ni, ci);
      if (!cell.error.empty()) {
        report.cell_errors.push_back(
            fmt::format("coupling {} N {}: {}", cell.coupling, cell.n_qubits, cell.error));
      }
      s.y.push_back(cell.result.tau_qsl);
    }
    chart.series.push_back(std::move(s));
  }
  out.emplace_back(stem + ".svg", render_svg(chart));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!file) {
    throw std::filesystem::filesystem_error(
        "cannot write", path, std::make_error_code(std::errc::io_error));
  }
}

}  // namespace

unsigned sweep_threads() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QSLSIM_THREADS"); env != nullptr && *env != '\0') {
    unsigned cap = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, cap);
    if (ec != std::errc() || ptr != end || cap == 0) {
      throw UsageError(fmt::format("QSLSIM_THREADS must be a positive integer, got '{}'", env));
    }
    threads = std::min(threads, cap);
  }
  return threads;
}

RunReport execute(const RunManifest& m) {
  RunReport report;
  Outputs outputs;
  switch (m.command) {
    case Command::dynamics: dynamics(m, outputs); break;
    case Command::bound_scan: bound_scan(m, "bound_scan", outputs, report); break;
    case Command::qsl_sweep: sweep(m, "qsl_sweep", outputs, report); break;
    case Command::reproduce:
      if (m.panel == "fig1a" || m.panel == "fig2a") {
        bound_scan(m, m.panel, outputs, report);
      } else {
        sweep(m, m.panel, outputs, report);
      }
      break;
  }
  outputs.emplace_back("run.conf", run_conf(m));

  // Everything is computed before anything is written.
  std::filesystem::create_directories(m.output_dir);
  for (const auto& [name, content] : outputs) {
    write_file(m.output_dir / name, content);
    report.files.push_back({name, sha256_hex(content), content.size()});
  }

  nlohmann::ordered_json manifest;
  manifest["command"] = command_name(m.command);
  if (!m.panel.empty()) manifest["panel"] = m.panel;
  manifest["kernel"] = simd::isa_name(simd::active_isa());
  manifest["config"] = nlohmann::ordered_json::object();
  for (const auto& key : known_keys()) {
    if (auto it = m.resolved.find(key); it != m.resolved.end()) {
      manifest["config"][key] = {{"value", it->second}, {"source", m.sources.at(key)}};
    }
  }
  manifest["provenance"] = m.provenance;
  manifest["files"] = nlohmann::ordered_json::array();
  for (const auto& f : report.files) {
    manifest["files"].push_back({{"path", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  }
  manifest["cell_errors"] = report.cell_errors;
  write_file(m.output_dir / "manifest.json", manifest.dump(2) + "\n");
  return report;
}

int run(int argc, char** argv) {
  CLI::App app{"Dynamics, bound states and speed-limit times of a qubit sharing a reservoir "
               "with N-1 spectator qubits"};
  app.require_subcommand(1);

  Settings flags;
  std::map<std::string, std::string> values;
  std::string config_path;
  std::string panel;

  auto add_shared = [&](CLI::App* sub) {
    const std::pair<const char*, const char*> options[] = {
        {"density", "lorentzian or ohmic"},
        {"gamma0", "Lorentzian coupling"},
        {"lambda", "Lorentzian width (default 1)"},
        {"gamma", "Ohmic coupling"},
        {"omega_c", "Ohmic cutoff (default 1)"},
        {"omega0", "qubit frequency, the unit of all rates (default 1)"},
        {"n", "number of qubits N"},
        {"n_list", "comma-separated N values for sweeps (default 1,2,4,10)"},
        {"tau", "time horizon (default 10)"},
        {"step", "time step (default 1e-3)"},
        {"grid_start", "first coupling of a sweep"},
        {"grid_stop", "last coupling of a sweep"},
        {"grid_step", "coupling spacing of a sweep"},
        {"tol", "bound-state or solver tolerance"},
        {"method", "auto, analytic or volterra"},
        {"out", "output directory (default .)"},
    };
    for (const auto& [key, help] : options) {
      std::string flag = std::string("--") + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      sub->add_option(flag, values[key], help);
    }
    sub->add_option("--config", config_path, "key = value file; flags override it");
  };

  auto* dyn = app.add_subcommand("dynamics", "amplitude C1(t), decay rate and population plot");
  auto* bound = app.add_subcommand("bound-scan", "bound-state energy over a coupling grid");
  auto* qsl = app.add_subcommand("qsl-sweep", "speed-limit time over a coupling grid");
  auto* repro = app.add_subcommand("reproduce", "canned panels fig1a, fig1b, fig2a, fig2b");
  repro->add_option("panel", panel, "fig1a, fig1b, fig2a or fig2b")->required();
  for (auto* sub : {dyn, bound, qsl, repro}) add_shared(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Command command = Command::dynamics;
  CLI::App* active = dyn;
  if (bound->parsed()) {
    command = Command::bound_scan;
    active = bound;
  } else if (qsl->parsed()) {
    command = Command::qsl_sweep;
    active = qsl;
  } else if (repro->parsed()) {
    command = Command::reproduce;
    active = repro;
  }
  for (const auto& [key, value] : values) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (active->count(flag) > 0) flags[key] = value;
  }
  std::optional<std::filesystem::path> config_file;
  if (active->count("--config") > 0) config_file = config_path;

  try {
    const auto manifest = parse_config(command, panel, flags, config_file);
    const auto report = execute(manifest);
    for (const auto& f : report.files) {
      std::cout << (manifest.output_dir / f.name).string() << '\n';
    }
    if (!report.cell_errors.empty()) {
      for (const auto& e : report.cell_errors) std::cerr << "qslsim: cell failed: " << e << '\n';
      return kExitNumeric;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "qslsim: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "qslsim: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "qslsim: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "qslsim: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace qslsim::cli
